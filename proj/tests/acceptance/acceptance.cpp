// One PASS/FAIL line per acceptance criterion. Every tolerance is pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "wdl/analysis.hpp"
#include "wdl/arith.hpp"
#include "wdl/bessel.hpp"
#include "wdl/exactsum.hpp"
#include "wdl/voronoi.hpp"

using wdl::Params;

namespace {

// Criterion 1
constexpr double oracle_tol = 1e-9;
constexpr double oracle_x_max = 2000.0;
constexpr double oracle_seconds = 60.0;
// Criterion 2
constexpr double symmetry_tol = 1e-10;
constexpr int symmetry_points = 10000;
// Criterion 3
constexpr double voronoi_ratio_max = 0.20;
constexpr double voronoi_growth_slack = 1.05;
constexpr std::uint64_t voronoi_samples = 1'000'000;
// Criterion 4
constexpr double alpha_decay_min = 3.0;
constexpr double kernel_residual_frac = 0.25;
constexpr double kernel_hit_rate = 0.90;
constexpr int kernel_samples = 200;
constexpr int synthetic_samples = 40;
// Criterion 5
constexpr double c2_drift_max = 0.15;
constexpr double first_moment_bound = 1.0;
constexpr double part_square_min = 1e-3;
// Criterion 6
constexpr double msq_ratio_bound = 1.0;
constexpr double msq_oracle_tol = 1e-3;
// Criterion 7
constexpr double gap_ratio_bound = 10.0;
// Criterion 8
constexpr double measure_frac_min = 0.01;
// Criterion 9
constexpr double fk_rel_tol = 1e-9;
// Criterion 10
constexpr double bessel_tol = 1e-2;

const Params main_params{1, 3, 1, 4};
const Params second_params{2, 5, 3, 7};

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail, double seconds) {
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s [%s] (%.1fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
}

template <typename F>
void run(int id, const std::string& what, F body) {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    detail.precision(6);
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
        ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(id, ok, what, detail.str(), secs);
}

Params flip_a2(Params p) {
    p.a2 = p.q2 - p.a2 == 0 ? p.q2 : p.q2 - p.a2;
    return p;
}

Params flip_a1(Params p) {
    p.a1 = p.q1 - p.a1 == 0 ? p.q1 : p.q1 - p.a1;
    return p;
}

}  // namespace

int main() {
    // Shared table for (1,3,1,4): covers the kernel test at T = 1e6, alpha = 50.
    const double kernel_T = 1e6;
    const double alpha = wdl::default_alpha;
    const double q = main_params.q1q2();
    const auto x_main = static_cast<std::uint64_t>(
        std::ceil(q * std::pow(std::sqrt(2.0 * kernel_T) + alpha, 2))) + 16;
    const auto t0 = std::chrono::steady_clock::now();
    const wdl::JumpTable big = wdl::sieve_jumps(x_main, main_params);
    std::printf("info: sieved X = %llu for (1,3,1,4) in %.1fs\n",
                static_cast<unsigned long long>(x_main),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const wdl::JumpTable second = wdl::sieve_jumps(2'000'100, second_params);

    run(1, "s_eval equals the double-loop primed sum at half-integers x <= 2000", [&](auto& d) {
        const auto start = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const Params& p : {Params{1, 3, 1, 4}, Params{2, 5, 3, 7}, Params{1, 2, 1, 3},
                                Params{3, 8, 2, 9}, Params{1, 4, 1, 3}}) {
            const oracle::DirectWeights w(p, static_cast<std::int64_t>(oracle_x_max));
            const auto t = wdl::sieve_jumps(static_cast<std::uint64_t>(oracle_x_max), p);
            for (double x = 0.5; x <= oracle_x_max; x += 0.5) {
                worst = std::max(worst, std::abs(wdl::s_eval(x, t) - oracle::naive_s(x, w)));
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        d << "max abs diff " << worst << " (tol " << oracle_tol << "), " << secs << "s (limit "
          << oracle_seconds << "s)";
        return worst <= oracle_tol && secs < oracle_seconds;
    });

    run(2, "a2 -> q2-a2 negates S, a1 -> q1-a1 preserves S, q2 in {1,2} gives S = 0", [&](auto& d) {
        const std::uint64_t X = 200000;
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> pick(0.0, static_cast<double>(X));
        double worst_neg = 0.0, worst_pres = 0.0, worst_zero = 0.0;
        for (const Params& p : {Params{1, 3, 1, 4}, Params{2, 5, 3, 7}, Params{3, 8, 2, 9},
                                Params{1, 4, 1, 3}, Params{5, 12, 7, 10}}) {
            const auto t = wdl::sieve_jumps(X, p);
            const auto tn = wdl::sieve_jumps(X, flip_a2(p));
            const auto tp = wdl::sieve_jumps(X, flip_a1(p));
            for (int i = 0; i < symmetry_points; ++i) {
                double x = pick(rng);
                if (i % 4 == 0) x = std::floor(x);  // include jump points
                const double s = wdl::s_eval(x, t);
                worst_neg = std::max(worst_neg, std::abs(s + wdl::s_eval(x, tn)));
                worst_pres = std::max(worst_pres, std::abs(s - wdl::s_eval(x, tp)));
            }
        }
        for (const Params& p : {Params{1, 3, 1, 2}, Params{1, 3, 1, 1}, Params{2, 5, 1, 1}, Params{3, 8, 1, 2}}) {
            const auto t = wdl::sieve_jumps(X, p);
            for (int i = 0; i < symmetry_points; ++i) {
                worst_zero = std::max(worst_zero, std::abs(wdl::s_eval(pick(rng), t)));
            }
        }
        d << "negation " << worst_neg << ", preservation " << worst_pres << ", vanishing " << worst_zero
          << " (tol " << symmetry_tol << ")";
        return worst_neg <= symmetry_tol && worst_pres <= symmetry_tol && worst_zero <= symmetry_tol;
    });

    run(3, "R0 mean-square residual <= 20% of mean S^2 at T = 1e5 and not growing at 2T", [&](auto& d) {
        std::vector<double> ratios;
        for (double T : {1e5, 2e5}) {
            auto trunc = wdl::derive_truncation(T, main_params.q1, main_params.q2, wdl::TruncationMode::sign_lemma);
            trunc.cap = 0;
            const wdl::VoronoiSeries series(main_params, trunc);
            const auto r = wdl::voronoi_residual(big, series, T, voronoi_samples);
            ratios.push_back(r.ratio);
            d << "T=" << T << " y=" << trunc.y << " ratio=" << r.ratio << "; ";
        }
        d << "limits " << voronoi_ratio_max << ", growth x" << voronoi_growth_slack;
        return ratios[0] <= voronoi_ratio_max && ratios[1] <= voronoi_growth_slack * ratios[0];
    });

    run(4, "kernel lemma: alpha-law on the single-term table and residual bound on the full table",
        [&](auto& d) {
            bool ok = true;
            // (a) single-term substitution on a non-square n0 case.
            const Params& sp = second_params;
            const double T = 1e5;
            const double t_lo = std::sqrt(T), t_hi = std::sqrt(2 * T);
            const auto xs = static_cast<std::uint64_t>(std::ceil(sp.q1q2() * std::pow(t_hi + 100.0, 2))) + 16;
            const auto single = wdl::single_term_table(sp, xs);
            std::vector<double> rms;
            for (double a : {25.0, 50.0, 100.0}) {
                const auto spec = wdl::make_kernel_spec(sp, a, 1);
                double acc = 0.0;
                for (int i = 0; i < synthetic_samples; ++i) {
                    const double t = t_lo + (t_hi - t_lo) * (i + 0.5) / synthetic_samples;
                    const double r = wdl::kernel_test(t, spec, single).residual;
                    acc += r * r;
                }
                rms.push_back(std::sqrt(acc / synthetic_samples));
            }
            const double r1 = rms[0] / rms[1], r2 = rms[1] / rms[2];
            d << "single-term rms residual " << rms[0] << ", " << rms[1] << ", " << rms[2]
              << " (decay " << r1 << ", " << r2 << ", need >= " << alpha_decay_min << "); ";
            ok = ok && r1 >= alpha_decay_min && r2 >= alpha_decay_min;

            // (b) full table.
            const auto spec = wdl::make_kernel_spec(main_params, alpha, 1);
            const double bound = kernel_residual_frac / (2.0 * std::pow(static_cast<double>(spec.n0), 0.75));
            const double lo = std::sqrt(kernel_T), hi = std::sqrt(2 * kernel_T);
            int hits = 0;
            double worst = 0.0;
            for (int i = 0; i < kernel_samples; ++i) {
                const double t = lo + (hi - lo) * (i + 0.5) / kernel_samples;
                const double r = std::abs(wdl::kernel_test(t, spec, big).residual);
                worst = std::max(worst, r);
                hits += r <= bound;
            }
            const double rate = static_cast<double>(hits) / kernel_samples;
            d << "full table: " << hits << "/" << kernel_samples << " within " << bound
              << " (need " << kernel_hit_rate << "), max " << worst;
            return ok && rate >= kernel_hit_rate;
        });

    run(5, "moments: C2 drift, bounded first moment, part-square ratio", [&](auto& d) {
        const double c2a = wdl::moment(1e5, 2, big).c_hat;
        const double c2b = wdl::moment(2e5, 2, big).c_hat;
        const double drift = std::abs(c2b / c2a - 1.0);
        const double pred = wdl::second_moment_prediction(main_params, 10000);
        d << "C2(1e5)=" << c2a << " C2(2e5)=" << c2b << " drift " << drift << " (max " << c2_drift_max
          << "), diagonal prediction " << pred << "; first-moment ratios";
        bool ok = c2a > 0 && c2b > 0 && drift <= c2_drift_max;
        for (double T : {1e4, 1e5, 1e6}) {
            const auto m = wdl::moment(T, 1, big);
            const double r = *m.first_moment_ratio;
            d << " " << r << " (mean S " << m.integral / (T - 1) << ")";
            ok = ok && r <= first_moment_bound;
        }
        d << " (bound " << first_moment_bound << "); part-square ratios";
        for (double T : {1e4, 1e5, 1e6}) {
            const auto r = wdl::part_square_ratio(T, big);
            d << " " << r.plus << "/" << r.minus;
            ok = ok && r.plus >= part_square_min && r.minus >= part_square_min;
        }
        d << " (min " << part_square_min << ")";
        return ok;
    });

    run(6, "short-interval mean square: bounded ratio and quadrature agreement", [&](auto& d) {
        bool ok = true;
        double worst = 0.0;
        for (double T : {1e4, 1e5}) {
            const double L = std::log(T);
            for (double h : {1.0, 4.0, 16.0, 64.0}) {
                const double I = wdl::short_interval_msq(T, h, big).value;
                const double shape = q * q * (h * T * std::pow(std::log(std::sqrt(T) / h), 3) + T * std::pow(L, 6));
                worst = std::max(worst, I / shape);
            }
        }
        ok = worst <= msq_ratio_bound;
        const double exact = wdl::short_interval_msq(50, 2, big).value;
        const double quad = oracle::riemann(
            [&](double x) {
                const double v = wdl::s_eval(q * (x + 2), big) - wdl::s_eval(q * x, big);
                return v * v;
            },
            1, 50, 1e-4);
        const double rel = std::abs(exact - quad) / std::abs(quad);
        d << "max ratio " << worst << " (bound " << msq_ratio_bound << "); T=50 exact " << exact
          << " vs quadrature " << quad << " rel " << rel << " (tol " << msq_oracle_tol << ")";
        return ok && rel <= msq_oracle_tol;
    });

    run(7, "sign-change gap ratio bounded over T in {1e4,1e5,1e6}, two parameter sets", [&](auto& d) {
        bool ok = true;
        for (const auto* t : {&big, &second}) {
            d << "(" << t->params().a1 << "," << t->params().q1 << "," << t->params().a2 << ","
              << t->params().q2 << "):";
            for (double T : {1e4, 1e5, 1e6}) {
                const double r = wdl::scan_sign_changes(T, 2 * T, *t).gap_ratio;
                d << " " << r;
                ok = ok && r < gap_ratio_bound;
            }
            d << "; ";
        }
        d << "bound " << gap_ratio_bound;
        return ok;
    });

    run(8, "exceedance measures >= 0.01 T and single-sign runs of length c4 sqrt(T) log^-7 T",
        [&](auto& d) {
            bool ok = true;
            for (double T : {1e5, 1e6}) {
                const auto m = wdl::exceedance_measure(T, big, wdl::default_c5);
                d << "T=" << T << " meas+ " << m.plus / T << "T meas- " << m.minus / T << "T; ";
                ok = ok && m.plus >= measure_frac_min * T && m.minus >= measure_frac_min * T;
            }
            const double T = 1e6;
            const double L = wdl::default_c4 * std::sqrt(T) * std::pow(std::log(T), -7.0);
            const auto runs = wdl::single_sign_runs(T, big, wdl::default_c5, L);
            d << "L=" << L << " runs +" << runs.plus << " -" << runs.minus
              << " count*L/T " << runs.plus * L / T << "/" << runs.minus * L / T;
            return ok && runs.plus >= 1 && runs.minus >= 1;
        });

    run(9, "omega witness for k = 3 satisfies the lower-bound inequality", [&](auto& d) {
        const double T = 1e6;
        const double c3 = wdl::moment(T, 3, big).c_hat;
        const auto w = wdl::omega_witness(T, 3, c3, big);
        const auto fk = wdl::fk_increment_check(T, 3, c3, big);
        d << "C3^=" << c3 << " delta=" << w.delta << " t=" << w.t << " H0=" << w.H0
          << " dF=" << w.f_increment << " bound=" << w.lower_bound << " C3*=" << w.c_star
          << "; F_3 increment gap " << fk.relative_gap << " (tol " << fk_rel_tol << ")";
        if (!w.found) d << "; " << w.diagnostics;
        return w.found && w.inequality_holds && w.c_star > 0 && fk.relative_gap <= fk_rel_tol;
    });

    run(10, "Bessel series partial sums approach S(5.5) with shrinking oscillation", [&](auto& d) {
        const double x = 5.5;
        const auto t = wdl::sieve_jumps(10, main_params);
        const double exact = wdl::s_eval(x, t);
        const auto sums = wdl::bessel_partial_sums(x, 1.0 / 3.0, 0.25, {1e3, 1e4, 1e5});
        bool ok = wdl::bessel_constant_term(0.25) == -0.25;
        d << "S(5.5)=" << exact;
        for (std::size_t i = 0; i < sums.size(); ++i) {
            d << "; R=" << sums[i].radius << " err " << sums[i].value - exact << " osc " << sums[i].oscillation;
            if (i > 0) ok = ok && sums[i].oscillation < sums[i - 1].oscillation;
        }
        ok = ok && std::abs(sums.back().value - exact) <= bessel_tol;
        d << " (tol " << bessel_tol << ")";
        return ok;
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SUMMARY", failures);
    return failures == 0 ? 0 : 1;
}
