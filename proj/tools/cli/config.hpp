#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wdl/analysis.hpp"
#include "wdl/params.hpp"

namespace wdl::cli {

/// Fully resolved settings for one CLI run. Every field has a default and the
/// whole struct is echoed into each report.
struct RunConfig {
    Params params{};
    double T = 1e5;
    std::vector<int> k{};                ///< empty: command default (moments 2, omega 3)
    double h = 4.0;
    double H0 = 4.0;
    double alpha = default_alpha;
    int zeta = 1;
    double c1 = default_c1;
    double c5 = default_c5;
    double c4 = default_c4;
    double f = 0.0;                      ///< perturbation coefficient for scan/kernel
    std::optional<double> y;             ///< truncation overrides
    std::optional<std::uint64_t> H;
    std::optional<int> J;
    std::uint64_t cap = 1'000'000;
    std::optional<double> c_k;           ///< omega reference constant
    std::string window = "auto";         ///< "auto" = [T, 2T] or "lo:hi"
    std::vector<double> points{};        ///< eval arguments (raw)
    std::vector<double> radii{1e3, 1e4, 1e5};
    double x = 5.5;                      ///< bessel-check argument
    int samples = 200;                   ///< kernel t-grid size
    std::optional<std::uint64_t> X;      ///< sieve size override
    std::string out;                     ///< output prefix; default wdl_<command>
    std::string cache;
    unsigned threads = 1;
    std::uint64_t memory = std::uint64_t{3} << 30;
    std::uint64_t block = std::uint64_t{1} << 20;

    /// Sets one field from its textual key=value form. Throws DomainError on
    /// unknown keys or malformed values.
    void set(const std::string& key, const std::string& value);

    nlohmann::ordered_json to_json() const;
};

/// Keys accepted by set(), in flag order.
const std::vector<std::string>& config_keys();

/// Reads a flat key=value file; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Defaults <- config file <- flags <- WDL_THREADS.
RunConfig resolve_config(const std::map<std::string, std::string>& flags);

std::vector<double> parse_list(const std::string& text);

}  // namespace wdl::cli
