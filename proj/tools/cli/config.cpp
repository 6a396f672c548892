#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wdl/error.hpp"

namespace wdl::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw DomainError("config: " + key + " expects a number, got '" + v + "'");
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 9.0e18) {
        throw DomainError("config: " + key + " expects an integer, got '" + v + "'");
    }
    return static_cast<std::int64_t>(d);
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
    const auto i = to_int(key, v);
    if (i < 0) throw DomainError("config: " + key + " must be nonnegative");
    return static_cast<std::uint64_t>(i);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double("list", item));
    }
    return out;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "a1", "q1", "a2", "q2", "kind", "T", "k", "h", "H0", "alpha", "zeta", "c1", "c5", "c4",
        "f", "y", "H", "J", "cap", "c_k", "window", "points", "radii", "x", "samples", "X",
        "out", "cache", "threads", "memory", "block"};
    return keys;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "a1") params.a1 = to_int(key, v);
    else if (key == "q1") params.q1 = to_int(key, v);
    else if (key == "a2") params.a2 = to_int(key, v);
    else if (key == "q2") params.q2 = to_int(key, v);
    else if (key == "kind") params.kind = weight_kind_from_string(v);
    else if (key == "T") T = to_double(key, v);
    else if (key == "k") {
        k.clear();
        for (double d : parse_list(v)) k.push_back(static_cast<int>(to_int(key, std::to_string(static_cast<long long>(d)))));
        if (k.empty()) throw DomainError("config: k needs at least one value");
    }
    else if (key == "h") h = to_double(key, v);
    else if (key == "H0") H0 = to_double(key, v);
    else if (key == "alpha") alpha = to_double(key, v);
    else if (key == "zeta") zeta = static_cast<int>(to_int(key, v));
    else if (key == "c1") c1 = to_double(key, v);
    else if (key == "c5") c5 = to_double(key, v);
    else if (key == "c4") c4 = to_double(key, v);
    else if (key == "f") f = to_double(key, v);
    else if (key == "y") y = to_double(key, v);
    else if (key == "H") H = to_count(key, v);
    else if (key == "J") J = static_cast<int>(to_int(key, v));
    else if (key == "cap") cap = to_count(key, v);
    else if (key == "c_k") c_k = to_double(key, v);
    else if (key == "window") window = v;
    else if (key == "points") points = parse_list(v);
    else if (key == "radii") radii = parse_list(v);
    else if (key == "x") x = to_double(key, v);
    else if (key == "samples") samples = static_cast<int>(to_int(key, v));
    else if (key == "X") X = to_count(key, v);
    else if (key == "out") out = v;
    else if (key == "cache") cache = v;
    else if (key == "threads") threads = static_cast<unsigned>(std::max<std::uint64_t>(1, to_count(key, v)));
    else if (key == "memory") memory = to_count(key, v);
    else if (key == "block") block = to_count(key, v);
    else throw DomainError("config: unknown key '" + key + "'");
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["a1"] = params.a1;
    j["q1"] = params.q1;
    j["a2"] = params.a2;
    j["q2"] = params.q2;
    j["kind"] = std::string(to_string(params.kind));
    j["T"] = T;
    j["k"] = k;
    j["h"] = h;
    j["H0"] = H0;
    j["alpha"] = alpha;
    j["zeta"] = zeta;
    j["c1"] = c1;
    j["c5"] = c5;
    j["c4"] = c4;
    j["f"] = f;
    j["y"] = y ? nlohmann::ordered_json(*y) : nlohmann::ordered_json(nullptr);
    j["H"] = H ? nlohmann::ordered_json(*H) : nlohmann::ordered_json(nullptr);
    j["J"] = J ? nlohmann::ordered_json(*J) : nlohmann::ordered_json(nullptr);
    j["cap"] = cap;
    j["c_k"] = c_k ? nlohmann::ordered_json(*c_k) : nlohmann::ordered_json(nullptr);
    j["window"] = window;
    j["points"] = points;
    j["radii"] = radii;
    j["x"] = x;
    j["samples"] = samples;
    j["X"] = X ? nlohmann::ordered_json(*X) : nlohmann::ordered_json(nullptr);
    j["out"] = out;
    j["cache"] = cache;
    j["threads"] = threads;
    j["memory"] = memory;
    j["block"] = block;
    return j;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DomainError("config: " + path.string() + ":" + std::to_string(lineno) +
                              ": expected key=value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig resolve_config(const std::map<std::string, std::string>& flags) {
    RunConfig cfg;
    if (const auto it = flags.find("config"); it != flags.end()) {
        for (const auto& [k, v] : read_config_file(it->second)) cfg.set(k, v);
    }
    for (const auto& [k, v] : flags) {
        if (k != "config") cfg.set(k, v);
    }
    if (const char* env = std::getenv("WDL_THREADS"); env != nullptr && *env != '\0') {
        cfg.set("threads", env);
    }
    return cfg;
}

}  // namespace wdl::cli
