#include "report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "wdl/error.hpp"
#include "wdl/version.hpp"

namespace wdl::cli {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write " + path.string());
    out << text;
    if (!out) throw ResourceError("write failed for " + path.string());
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::Row& CsvTable::Row::operator<<(double v) {
    cells_.push_back(format_double(v));
    return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(std::int64_t v) {
    cells_.push_back(std::to_string(v));
    return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(std::uint64_t v) {
    cells_.push_back(std::to_string(v));
    return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(const std::string& v) {
    cells_.push_back(quote_csv(v));
    return *this;
}

CsvTable::Row& CsvTable::row() { return rows_.emplace_back(); }

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (const Row& r : rows_) {
        for (std::size_t i = 0; i < r.cells_.size(); ++i) out += (i ? "," : "") + r.cells_[i];
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "wdl/1";
    j["command"] = command;
    j["version"] = std::string(wdl::version);
    j["timestamp"] = utc_timestamp();
    j["config"] = config;
    j["results"] = results;
    j["warnings"] = warnings;
    return j;
}

void write_outputs(const std::string& prefix, const CsvTable& csv, const Report& report) {
    write_file(prefix + ".csv", csv.str());
    write_file(prefix + ".json", report.to_json().dump(2) + "\n");
}

nlohmann::ordered_json error_record(const std::string& command, const std::string& type,
                                    const std::string& message) {
    nlohmann::ordered_json j;
    j["schema"] = "wdl/1";
    j["command"] = command;
    j["version"] = std::string(wdl::version);
    j["error"] = {{"type", type}, {"message", message}};
    return j;
}

}  // namespace wdl::cli
