#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "oracles.hpp"
#include "report.hpp"
#include "wdl/analysis.hpp"
#include "wdl/arith.hpp"
#include "wdl/bessel.hpp"
#include "wdl/cache_io.hpp"
#include "wdl/compensated.hpp"
#include "wdl/error.hpp"
#include "wdl/exactsum.hpp"
#include "wdl/voronoi.hpp"

namespace wdl::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t ceil_index(double v) { return static_cast<std::uint64_t>(std::ceil(std::max(v, 1.0))) + 1; }

SieveOptions sieve_options(const RunConfig& cfg) {
    SieveOptions o;
    o.memory_budget_bytes = cfg.memory;
    o.block_size = cfg.block;
    o.threads = cfg.threads;
    return o;
}

// Loads the cache when it matches and is large enough, otherwise sieves (and
// refreshes the cache when a path is configured).
JumpTable acquire_table(const RunConfig& cfg, std::uint64_t need, Report& rep, std::ostream& log) {
    const std::uint64_t x = std::max(need, cfg.X.value_or(0));
    if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
        const auto h = read_cache_header(cfg.cache);
        if (h.params == cfg.params && h.x_max >= x) {
            rep.results["table"] = {{"source", "cache"}, {"X", h.x_max}};
            return read_cache(cfg.cache);
        }
        log << "cache " << cfg.cache << " does not cover X = " << x << "; re-sieving\n";
    }
    const auto start = Clock::now();
    JumpTable t = sieve_jumps(x, cfg.params, sieve_options(cfg));
    log << "sieved X = " << x << " in " << seconds_since(start) << " s\n";
    rep.results["table"] = {{"source", "sieve"}, {"X", x}};
    if (!cfg.cache.empty()) write_cache(cfg.cache, t);
    return t;
}

std::pair<double, double> scan_window(const RunConfig& cfg) {
    if (cfg.window == "auto") return {cfg.T, 2.0 * cfg.T};
    const auto colon = cfg.window.find(':');
    if (colon == std::string::npos) throw DomainError("window must be 'auto' or 'lo:hi'");
    const auto lo = parse_list(cfg.window.substr(0, colon));
    const auto hi = parse_list(cfg.window.substr(colon + 1));
    if (lo.size() != 1 || hi.size() != 1) throw DomainError("window must be 'auto' or 'lo:hi'");
    return {lo[0], hi[0]};
}

ordered_json optional_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

// ---------------------------------------------------------------- commands

int cmd_sieve(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const std::uint64_t x = cfg.X.value_or(ceil_index(2.0 * cfg.params.q1q2() * cfg.T));
    CsvTable csv({"X", "q1", "a1", "q2", "a2", "kind", "prefix_X", "spot_check_max_rel_error", "cache"});
    const auto start = Clock::now();
    double prefix_x = 0.0;
    std::optional<double> spot;
    const bool in_core = 16.0L * (static_cast<long double>(x) + 1) <= static_cast<long double>(cfg.memory);
    if (in_core) {
        const JumpTable t = sieve_jumps(x, cfg.params, sieve_options(cfg));
        prefix_x = t.prefix(x);
        spot = spot_check_prefixes(t).max_relative_error;
        if (!cfg.cache.empty()) write_cache(cfg.cache, t);
    } else {
        if (cfg.cache.empty()) {
            throw ResourceError("X = " + std::to_string(x) + " exceeds the in-core budget; pass --cache to stream blocks to disk");
        }
        log << "streaming " << x << " jumps to " << cfg.cache << "\n";
        CacheWriter w(cfg.cache, cfg.params, x);
        CompensatedSum<long double> acc;
        for_each_jump_block(x, cfg.params, cfg.block, [&](std::uint64_t, std::span<const double> b) {
            for (double v : b) acc.add(v);
            w.append(b);
        });
        w.close();
        prefix_x = static_cast<double>(acc.value());
    }
    log << "sieved X = " << x << " in " << seconds_since(start) << " s\n";
    csv.row() << x << cfg.params.q1 << cfg.params.a1 << cfg.params.q2 << cfg.params.a2
              << std::string(to_string(cfg.params.kind)) << prefix_x
              << (spot ? format_double(*spot) : std::string()) << cfg.cache;
    rep.results = {{"X", x}, {"prefix_X", prefix_x},
                   {"spot_check_max_rel_error", optional_json(spot)}, {"in_core", in_core},
                   {"cache", cfg.cache}};
    write_outputs(cfg.out, csv, rep);
    return 0;
}

TruncationParams truncation_from(const RunConfig& cfg) {
    TruncationParams t = derive_truncation(cfg.T, cfg.params.q1, cfg.params.q2, TruncationMode::sign_lemma);
    if (cfg.y) t.y = *cfg.y;
    if (cfg.H) t.H = *cfg.H;
    if (cfg.J) t.J = *cfg.J;
    t.cap = cfg.cap;
    if (cfg.y || cfg.H) check_truncation_window(t, cfg.params.modulus_product());
    return t;
}

int cmd_eval(RunConfig& cfg, Report& rep, std::ostream& log) {
    if (cfg.points.empty()) cfg.points = {cfg.T};
    rep.config["points"] = cfg.points;
    const double hi = *std::max_element(cfg.points.begin(), cfg.points.end());
    const JumpTable t = acquire_table(cfg, ceil_index(hi), rep, log);
    const TruncationParams trunc = truncation_from(cfg);
    const VoronoiSeries series(cfg.params, trunc);
    rep.warnings.insert(rep.warnings.end(), trunc.warnings.begin(), trunc.warnings.end());
    if (series.capped()) rep.warnings.push_back("R12/R21 range cut by the exploration cap");
    const double q = cfg.params.q1q2();
    CsvTable csv({"x", "S", "S_plus", "S_minus", "R0", "voronoi"});
    ordered_json rows = ordered_json::array();
    for (double x : cfg.points) {
        const double s = s_eval(x, t);
        const auto pm = plus_minus(s);
        const double r0 = series.r0(x / q), full = series.approx(x / q);
        csv.row() << x << s << pm.plus << pm.minus << r0 << full;
        rows.push_back({{"x", x}, {"S", s}, {"R0", r0}, {"voronoi", full}});
    }
    rep.results["truncation"] = {{"y", trunc.y}, {"H", trunc.H}, {"J", trunc.J}, {"cap", trunc.cap},
                                 {"tail_hi", series.tail_hi()}, {"capped", series.capped()}};
    rep.results["values"] = rows;
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_scan(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const auto [lo, hi] = scan_window(cfg);
    const JumpTable t = acquire_table(cfg, ceil_index(hi), rep, log);
    ScanOptions o;
    o.c1 = cfg.c1;
    o.f_coeff = cfg.f;
    const auto r = scan_sign_changes(lo, hi, t, o);
    CsvTable csv({"t_lo", "t_hi", "index", "crossing", "max_gap", "gap_ratio"});
    for (std::size_t i = 0; i < r.crossings.size(); ++i) {
        csv.row() << lo << hi << static_cast<std::uint64_t>(i) << r.crossings[i] << r.max_gap << r.gap_ratio;
    }
    if (r.crossings.empty()) csv.row() << lo << hi << "" << "" << r.max_gap << r.gap_ratio;
    rep.results["t_lo"] = lo;
    rep.results["t_hi"] = hi;
    rep.results["crossings"] = r.crossings.size();
    rep.results["max_gap"] = r.max_gap;
    rep.results["gap_ratio"] = r.gap_ratio;
    rep.results["witness_plus"] = optional_json(r.witness_plus);
    rep.results["witness_minus"] = optional_json(r.witness_minus);
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_exceed(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const JumpTable t = acquire_table(cfg, ceil_index(2.0 * cfg.T), rep, log);
    const auto m = exceedance_measure(cfg.T, t, cfg.c5);
    CsvTable csv({"T", "c5", "meas_plus", "meas_minus", "frac_plus", "frac_minus"});
    csv.row() << cfg.T << cfg.c5 << m.plus << m.minus << m.plus / cfg.T << m.minus / cfg.T;
    rep.results = {{"meas_plus", m.plus}, {"meas_minus", m.minus},
                   {"frac_plus", m.plus / cfg.T}, {"frac_minus", m.minus / cfg.T}};
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_runs(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const JumpTable t = acquire_table(cfg, ceil_index(2.0 * cfg.T), rep, log);
    const double L = cfg.c4 * std::sqrt(cfg.T) * std::pow(std::log(cfg.T), -7.0);
    const auto r = single_sign_runs(cfg.T, t, cfg.c5, L);
    const double shape = std::sqrt(cfg.T) * std::pow(std::log(cfg.T), 7.0);
    CsvTable csv({"T", "c5", "c4", "L", "count_plus", "count_minus", "longest_plus", "longest_minus",
                  "count_over_shape_plus", "count_over_shape_minus"});
    csv.row() << cfg.T << cfg.c5 << cfg.c4 << L << r.plus << r.minus << r.longest_plus << r.longest_minus
              << r.plus / shape << r.minus / shape;
    rep.results = {{"L", L}, {"count_plus", r.plus}, {"count_minus", r.minus},
                   {"longest_plus", r.longest_plus}, {"longest_minus", r.longest_minus},
                   {"count_L_over_T_plus", r.plus * L / cfg.T}, {"count_L_over_T_minus", r.minus * L / cfg.T}};
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_kernel(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const auto spec = make_kernel_spec(cfg.params, cfg.alpha, cfg.zeta);
    const double lo = std::sqrt(cfg.T), hi = std::sqrt(2.0 * cfg.T);
    const double q = cfg.params.q1q2();
    const JumpTable t = acquire_table(cfg, ceil_index(q * (hi + cfg.alpha) * (hi + cfg.alpha)), rep, log);
    if (cfg.samples < 1) throw DomainError("samples must be >= 1");
    const double bound = 0.25 / (2.0 * std::pow(static_cast<double>(spec.n0), 0.75));
    CsvTable csv({"t", "lhs", "predicted", "residual", "pieces", "within_bound"});
    int hits = 0;
    double worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        const double tt = lo + (hi - lo) * (i + 0.5) / cfg.samples;
        const auto r = kernel_test(tt, spec, t, cfg.f);
        const bool ok = std::abs(r.residual) <= bound;
        hits += ok;
        worst = std::max(worst, std::abs(r.residual));
        csv.row() << tt << r.lhs << r.predicted << r.residual << r.pieces << ok;
    }
    rep.results = {{"n0", spec.n0}, {"zeta_prime", spec.zeta_prime}, {"bound", bound},
                   {"within_bound", hits}, {"samples", cfg.samples},
                   {"hit_rate", static_cast<double>(hits) / cfg.samples}, {"max_abs_residual", worst}};
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_msq(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const double q = cfg.params.q1q2();
    const JumpTable t = acquire_table(cfg, ceil_index(q * (cfg.T + cfg.h)), rep, log);
    const auto r = short_interval_msq(cfg.T, cfg.h, t);
    const double L = std::log(cfg.T);
    const double shape = q * q * (cfg.h * cfg.T * std::pow(std::log(std::sqrt(cfg.T) / cfg.h), 3) + cfg.T * std::pow(L, 6));
    CsvTable csv({"T", "h", "I", "shape", "ratio"});
    csv.row() << cfg.T << cfg.h << r.value << shape << r.value / shape;
    rep.warnings.insert(rep.warnings.end(), r.warnings.begin(), r.warnings.end());
    rep.results = {{"I", r.value}, {"shape", shape}, {"ratio", r.value / shape}};
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_maxmsq(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const double q = cfg.params.q1q2();
    const JumpTable t = acquire_table(cfg, ceil_index(q * (2.0 * cfg.T + cfg.H0)), rep, log);
    if (cfg.H0 < 2.0 || cfg.H0 > std::sqrt(cfg.T)) rep.warnings.push_back("H0 outside [2, sqrt(T)]");
    const auto r = max_increment_msq(cfg.T, cfg.H0, t);
    const double shape = q * q * cfg.H0 * cfg.T * std::pow(std::log(cfg.T), 7);
    CsvTable csv({"T", "H0", "plus", "minus", "shape", "ratio_plus", "ratio_minus"});
    csv.row() << cfg.T << cfg.H0 << r.plus << r.minus << shape << r.plus / shape << r.minus / shape;
    rep.results = {{"plus", r.plus}, {"minus", r.minus}, {"shape", shape},
                   {"ratio_plus", r.plus / shape}, {"ratio_minus", r.minus / shape}};
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_moments(RunConfig& cfg, Report& rep, std::ostream& log) {
    if (cfg.k.empty()) cfg.k = {2};
    rep.config["k"] = cfg.k;
    const double q = cfg.params.q1q2();
    const JumpTable t = acquire_table(cfg, ceil_index(q * cfg.T), rep, log);
    CsvTable csv({"T", "k", "integral", "c_hat", "first_moment_ratio", "f_k"});
    ordered_json rows = ordered_json::array();
    for (int k : cfg.k) {
        const auto m = moment(cfg.T, k, t, cfg.c_k);
        csv.row() << cfg.T << k << m.integral << m.c_hat
                  << (m.first_moment_ratio ? format_double(*m.first_moment_ratio) : std::string())
                  << (m.f_k ? format_double(*m.f_k) : std::string());
        ordered_json row = {{"k", k}, {"integral", m.integral}, {"c_hat", m.c_hat},
                            {"first_moment_ratio", optional_json(m.first_moment_ratio)},
                            {"f_k", optional_json(m.f_k)}};
        if (k == 2 && cfg.params.q2 > 2) {
            row["diagonal_prediction"] = second_moment_prediction(cfg.params, 10000);
        }
        rows.push_back(row);
    }
    rep.results["moments"] = rows;
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_omega(RunConfig& cfg, Report& rep, std::ostream& log) {
    if (cfg.k.empty()) cfg.k = {3};
    rep.config["k"] = cfg.k;
    const int k = cfg.k.front();
    const double q = cfg.params.q1q2();
    const JumpTable t = acquire_table(cfg, ceil_index(2.0 * q * cfg.T + q), rep, log);
    const double c_k = cfg.c_k ? *cfg.c_k : moment(cfg.T, k, t).c_hat;
    rep.results["c_k_source"] = cfg.c_k ? "supplied" : "estimated at T";
    OmegaOptions o;
    o.c4 = cfg.c4;
    o.c5 = cfg.c5;
    const auto w = omega_witness(cfg.T, k, c_k, t, o);
    const auto fk = fk_increment_check(cfg.T, k, c_k, t);
    CsvTable csv({"T", "k", "c_k", "delta", "found", "t", "H0", "increment", "f_increment", "c_star",
                  "lower_bound", "inequality_holds", "fk_relative_gap"});
    csv.row() << cfg.T << k << c_k << w.delta << w.found << w.t << w.H0 << w.increment << w.f_increment
              << w.c_star << w.lower_bound << w.inequality_holds << fk.relative_gap;
    rep.results["c_k"] = c_k;
    rep.results["delta"] = w.delta;
    rep.results["found"] = w.found;
    rep.results["t"] = w.t;
    rep.results["H0"] = w.H0;
    rep.results["increment"] = w.increment;
    rep.results["f_increment"] = w.f_increment;
    rep.results["c_star"] = w.c_star;
    rep.results["lower_bound"] = w.lower_bound;
    rep.results["inequality_holds"] = w.inequality_holds;
    rep.results["fk_by_definition"] = fk.by_definition;
    rep.results["fk_by_difference"] = fk.by_difference;
    rep.results["fk_relative_gap"] = fk.relative_gap;
    rep.results["diagnostics"] = w.diagnostics;
    write_outputs(cfg.out, csv, rep);
    return 0;
}

int cmd_bessel(const RunConfig& cfg, Report& rep, std::ostream& log) {
    const JumpTable t = acquire_table(cfg, ceil_index(cfg.x), rep, log);
    const double exact = s_eval(cfg.x, t);
    const auto cfg_b = BesselSeriesConfig::from_params(cfg.params, 1.0);
    const auto sums = bessel_partial_sums(cfg.x, cfg_b.theta1, cfg_b.theta2, cfg.radii);
    CsvTable csv({"x", "radius", "value", "terms", "oscillation", "exact", "error"});
    ordered_json rows = ordered_json::array();
    for (const auto& s : sums) {
        csv.row() << cfg.x << s.radius << s.value << s.terms << s.oscillation << exact << s.value - exact;
        rows.push_back({{"radius", s.radius}, {"value", s.value}, {"terms", s.terms},
                        {"oscillation", s.oscillation}, {"error", s.value - exact}});
    }
    rep.results["exact"] = exact;
    rep.results["constant_term"] = bessel_constant_term(cfg_b.theta2);
    rep.results["partial_sums"] = rows;
    write_outputs(cfg.out, csv, rep);
    return 0;
}

// Oracle-equivalence suite on small inputs.
int cmd_selftest(const RunConfig& cfg, Report& rep, std::ostream& log) {
    CsvTable csv({"check", "passed", "max_error", "tolerance"});
    ordered_json rows = ordered_json::array();
    int failed = 0;
    auto record = [&](const std::string& name, double err, double tol) {
        const bool ok = err <= tol;
        failed += !ok;
        csv.row() << name << ok << err << tol;
        rows.push_back({{"check", name}, {"passed", ok}, {"max_error", err}, {"tolerance", tol}});
        log << (ok ? "ok   " : "FAIL ") << name << " (max error " << format_double(err) << ")\n";
    };
    const std::vector<Params> sets = {{1, 3, 1, 4}, {2, 5, 3, 7}, {1, 2, 1, 3}, {3, 8, 2, 9}, {1, 4, 1, 3}};

    double e_jump = 0.0, e_s = 0.0, e_d2 = 0.0, e_piece = 0.0;
    for (const Params& p : sets) {
        const oracle::DirectWeights w(p, 2000);
        const JumpTable t = sieve_jumps(2000, p);
        for (std::int64_t n = 1; n <= 2000; ++n) e_jump = std::max(e_jump, std::abs(t.jump(n) - oracle::naive_jump(n, w)));
        for (double x = 0.5; x <= 500.0; x += 0.5) e_s = std::max(e_s, std::abs(s_eval(x, t) - oracle::naive_s(x, w)));
        if (p.q2 > 2) {
            const auto d = delta_d2_table(2000, p);
            for (std::int64_t n = 1; n <= 2000; ++n) {
                e_d2 = std::max(e_d2, static_cast<double>(std::abs(d[n] - oracle::delta_d2(n, p))));
            }
        }
        for (int J = 0; J <= 3; ++J) {
            for (std::uint64_t H = 2; H <= 10; H += 4) {
                const auto t21 = delta_d21_table(1, 200, H, J, p);
                const auto t22 = delta_d22_table(1, 200, H, J, p);
                for (std::int64_t n = 1; n <= 200; ++n) {
                    e_piece = std::max(e_piece, static_cast<double>(std::abs(t21[n - 1] - oracle::twice_piece(n, H, J, p, true))));
                    e_piece = std::max(e_piece, static_cast<double>(std::abs(t22[n - 1] - oracle::twice_piece(n, H, J, p, false))));
                }
            }
        }
    }
    record("sieve_vs_divisor_pairs", e_jump, 1e-10);
    record("s_eval_vs_double_loop", e_s, 1e-9);
    record("delta_d2_vs_enumeration", e_d2, 0.0);
    record("hyperbola_pieces_vs_enumeration", e_piece, 0.0);

    const JumpTable t = sieve_jumps(5000, {1, 3, 1, 4});
    const double exact = integrate_power(t, 1.0, 3.0, 1, Domain::raw);
    const double quad = oracle::riemann([&](double x) { return s_eval(x, t); }, 1.0, 3.0, 1e-4);
    record("integrate_power_vs_riemann", std::abs(exact - quad), 1e-3);

    const double msq = short_interval_msq(50, 2, t).value;
    const double msq_quad = oracle::riemann(
        [&](double x) {
            const double d = s_eval(12 * (x + 2), t) - s_eval(12 * x, t);
            return d * d;
        },
        1, 50, 1e-4);
    record("short_interval_msq_vs_riemann", std::abs(msq - msq_quad) / msq_quad, 1e-3);

    double e_j1 = 0.0;
    for (double z = 0.0; z <= 20.0; z += 0.125) e_j1 = std::max(e_j1, std::abs(j1(z) - oracle::j1_series(z)));
    record("j1_vs_series", e_j1, 1e-10);

    const auto path = std::filesystem::temp_directory_path() / "wdl_selftest_cache.bin";
    write_cache(path, t);
    const JumpTable back = read_cache(path);
    double e_cache = 0.0;
    for (std::uint64_t n = 0; n <= t.max_index(); ++n) e_cache = std::max(e_cache, std::abs(back.prefix(n) - t.prefix(n)));
    std::filesystem::remove(path);
    record("cache_round_trip", e_cache, 0.0);

    rep.results["checks"] = rows;
    rep.results["failed"] = failed;
    write_outputs(cfg.out, csv, rep);
    return failed == 0 ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"sieve", "eval", "scan", "exceed", "runs", "kernel",
                                                   "msq", "maxmsq", "moments", "omega", "bessel-check", "selftest"};
    return names;
}

int run_command(const std::string& name, RunConfig cfg, std::ostream& log) {
    validate(cfg.params);
    if (cfg.out.empty()) cfg.out = "wdl_" + name;
    Report rep;
    rep.command = name;
    rep.config = cfg.to_json();
    rep.warnings = theorem_warnings(cfg.params);
    if (name == "sieve") return cmd_sieve(cfg, rep, log);
    if (name == "eval") return cmd_eval(cfg, rep, log);
    if (name == "scan") return cmd_scan(cfg, rep, log);
    if (name == "exceed") return cmd_exceed(cfg, rep, log);
    if (name == "runs") return cmd_runs(cfg, rep, log);
    if (name == "kernel") return cmd_kernel(cfg, rep, log);
    if (name == "msq") return cmd_msq(cfg, rep, log);
    if (name == "maxmsq") return cmd_maxmsq(cfg, rep, log);
    if (name == "moments") return cmd_moments(cfg, rep, log);
    if (name == "omega") return cmd_omega(cfg, rep, log);
    if (name == "bessel-check") return cmd_bessel(cfg, rep, log);
    if (name == "selftest") return cmd_selftest(cfg, rep, log);
    throw DomainError("unknown command '" + name + "'");
}

}  // namespace wdl::cli
