#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace wdl::cli {

/// Float formatting shared by CSV and text output: 17 significant digits.
std::string format_double(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    class Row {
    public:
        Row& operator<<(double v);
        Row& operator<<(std::int64_t v);
        Row& operator<<(std::uint64_t v);
        Row& operator<<(int v) { return *this << static_cast<std::int64_t>(v); }
        Row& operator<<(bool v) { return *this << static_cast<std::int64_t>(v ? 1 : 0); }
        Row& operator<<(const std::string& v);
        Row& operator<<(const char* v) { return *this << std::string(v); }

    private:
        friend class CsvTable;
        std::vector<std::string> cells_;
    };

    Row& row();
    std::string str() const;
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

struct Report {
    std::string command;
    nlohmann::ordered_json config;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;

    nlohmann::ordered_json to_json() const;
};

/// Writes <prefix>.csv and <prefix>.json.
void write_outputs(const std::string& prefix, const CsvTable& csv, const Report& report);

/// Machine-readable error record.
nlohmann::ordered_json error_record(const std::string& command, const std::string& type,
                                    const std::string& message);

}  // namespace wdl::cli
