#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"
#include "wdl/error.hpp"

using namespace wdl::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("wdl_test_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("defaults") {
    unsetenv("WDL_THREADS");
    const RunConfig c = resolve_config({});
    CHECK(c.params.q1 == 3);
    CHECK(c.params.a1 == 1);
    CHECK(c.params.q2 == 4);
    CHECK(c.params.a2 == 1);
    CHECK(c.T == 1e5);
    CHECK(c.k.empty());
    CHECK(c.window == "auto");
    CHECK(c.threads == 1);
    CHECK(c.memory == (std::uint64_t{3} << 30));
}

TEST_CASE("set parses every value kind and rejects junk") {
    RunConfig c;
    c.set("T", "2.5e4");
    c.set("k", "2,3,4");
    c.set("points", "1.5, 2.5");
    c.set("X", "1000");
    c.set("kind", "cos_cos");
    CHECK(c.T == 2.5e4);
    CHECK(c.k == std::vector<int>{2, 3, 4});
    CHECK(c.points == std::vector<double>{1.5, 2.5});
    CHECK(c.X == std::uint64_t{1000});
    CHECK_THROWS_AS(c.set("nope", "1"), wdl::DomainError);
    CHECK_THROWS_AS(c.set("T", "abc"), wdl::DomainError);
    CHECK_THROWS_AS(c.set("samples", "1.5"), wdl::DomainError);
}

TEST_CASE("precedence: defaults, config file, flags, environment") {
    const auto path = scratch("cfg.txt");
    {
        std::ofstream out(path);
        out << "# a comment\n\nT = 3e4\nh=7  # trailing\nthreads = 2\n";
    }
    unsetenv("WDL_THREADS");
    RunConfig c = resolve_config({{"config", path.string()}, {"h", "9"}});
    CHECK(c.T == 3e4);
    CHECK(c.h == 9);
    CHECK(c.threads == 2);

    setenv("WDL_THREADS", "3", 1);
    c = resolve_config({{"config", path.string()}, {"threads", "5"}});
    CHECK(c.threads == 3);
    unsetenv("WDL_THREADS");
    std::filesystem::remove(path);
}

TEST_CASE("malformed config line") {
    const auto path = scratch("bad.txt");
    {
        std::ofstream out(path);
        out << "T 3e4\n";
    }
    CHECK_THROWS_AS(read_config_file(path), wdl::DomainError);
    std::filesystem::remove(path);
}

TEST_CASE("csv formatting round-trips doubles and quotes text") {
    CsvTable t({"a", "b", "c"});
    t.row() << 0.1 << std::string("x,y") << true;
    t.row() << 1e-300 << std::string("say \"hi\"") << std::int64_t{-4};
    const std::string s = t.str();
    CHECK(s.find("a,b,c\n") == 0);
    CHECK(s.find("0.10000000000000001,\"x,y\",1\n") != std::string::npos);
    CHECK(s.find("\"say \"\"hi\"\"\"") != std::string::npos);
    CHECK(std::stod(format_double(0.1)) == 0.1);
}

TEST_CASE("report schema") {
    Report r;
    r.command = "eval";
    r.config = RunConfig{}.to_json();
    r.results["S"] = -1.0;
    r.warnings.push_back("w");
    const auto j = r.to_json();
    CHECK(j["schema"] == "wdl/1");
    CHECK(j["command"] == "eval");
    CHECK(j.contains("version"));
    CHECK(j.contains("timestamp"));
    CHECK(j["config"]["T"] == 1e5);
    CHECK(j["results"]["S"] == -1.0);
    CHECK(j["warnings"].size() == 1);

    const auto e = error_record("eval", "domain_error", "bad");
    CHECK(e["error"]["type"] == "domain_error");
    CHECK(e["error"]["message"] == "bad");
}

TEST_CASE("eval command writes csv and json") {
    RunConfig c;
    c.points = {5.5, 100};
    c.out = scratch("eval").string();
    std::ostringstream log;
    CHECK(run_command("eval", c, log) == 0);
    const auto csv = slurp(c.out + ".csv");
    CHECK(csv.find("x,S,S_plus,S_minus,R0,voronoi\n") == 0);
    CHECK(csv.find("5.5,-1,0,1,") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(c.out + ".json"));
    CHECK(j["results"]["values"].size() == 2);
    std::filesystem::remove(c.out + ".csv");
    std::filesystem::remove(c.out + ".json");
}

TEST_CASE("omega echoes the resolved default k") {
    RunConfig c;
    c.T = 2000;
    c.out = scratch("omega").string();
    std::ostringstream log;
    CHECK(run_command("omega", c, log) == 0);
    const auto j = nlohmann::json::parse(slurp(c.out + ".json"));
    CHECK(j["config"]["k"] == std::vector<int>{3});
    CHECK(j["results"]["fk_relative_gap"].get<double>() < 1e-9);
    std::filesystem::remove(c.out + ".csv");
    std::filesystem::remove(c.out + ".json");
}

TEST_CASE("unknown command and invalid residue") {
    std::ostringstream log;
    CHECK_THROWS_AS(run_command("nope", RunConfig{}, log), wdl::DomainError);
    RunConfig c;
    c.params.a1 = 0;
    CHECK_THROWS_AS(run_command("eval", c, log), wdl::DomainError);
}
