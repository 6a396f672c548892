#include <algorithm>
#include <cmath>
#include <sstream>

#include "wdl/analysis.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

// x^p - y^p for nearby x > y > 0.
double power_increment(double y, double x, double p) {
    return std::pow(y, p) * std::expm1(p * std::log1p((x - y) / y));
}

}  // namespace

int omega_delta(double c_k) { return c_k >= 0.0 ? -1 : 1; }

OmegaWitness omega_witness(double T, int k, double c_k_ref, const JumpTable& table,
                           const OmegaOptions& options) {
    if (k < 3 || k % 2 == 0) throw DomainError("omega: k must be odd and >= 3");
    if (!(T > 1.0)) throw DomainError("omega: T must exceed 1");
    if (!(options.c4 > 0.0) || !(options.c5 > 0.0)) throw DomainError("omega: c4, c5 must be positive");
    const double q = table.params().q1q2();

    OmegaWitness w;
    w.delta = omega_delta(c_k_ref);
    w.H0 = options.c4 * std::sqrt(T) * std::pow(std::log(T), -7.0);
    const double p = 1.0 + k / 4.0;
    w.c_star = std::pow(options.c5, k) - w.delta * c_k_ref * p;

    const auto runs = threshold_runs(q * T, 2.0 * q * T, table, options.c5, w.delta);
    const double need = q * w.H0;
    double longest = 0.0;
    for (const Run& r : runs) {
        longest = std::max(longest, r.length());
        if (r.length() >= need) {
            w.found = true;
            // Centre the window so the closed interval sits inside the open run.
            w.t = (r.start + 0.5 * (r.length() - need)) / q;
            break;
        }
    }
    if (!w.found) {
        std::ostringstream os;
        os << "no run of sign " << w.delta << " with raw length >= " << need << " in [" << q * T
           << ", " << 2.0 * q * T << "]; longest " << longest << " among " << runs.size()
           << " runs";
        w.diagnostics = os.str();
        return w;
    }
    w.increment = std::pow(q, -k) *
                  integrate_power(table, w.t, w.t + w.H0, k, Domain::normalized);
    w.f_increment = w.increment - c_k_ref * power_increment(w.t, w.t + w.H0, p);
    w.lower_bound = w.c_star * w.H0 * std::pow(w.t, k / 4.0);
    w.inequality_holds = w.delta * w.f_increment >= w.lower_bound;
    std::ostringstream os;
    os << "run of sign " << w.delta << " starting at t = " << w.t << "; " << runs.size()
       << " runs in window";
    w.diagnostics = os.str();
    return w;
}

FkIncrementCheck fk_increment_check(double T, int k, double c_k, const JumpTable& table) {
    if (!(T >= 1.0)) throw DomainError("fk check: T must be >= 1");
    const double q = table.params().q1q2();
    const double p = 1.0 + k / 4.0;
    FkIncrementCheck out;
    out.by_definition = moment_error(2.0 * T, k, c_k, table) - moment_error(T, k, c_k, table);
    out.by_difference = std::pow(q, -k) * integrate_power(table, T, 2.0 * T, k, Domain::normalized) -
                        c_k * power_increment(T, 2.0 * T, p);
    const double scale = std::max({std::abs(out.by_definition), std::abs(out.by_difference), 1e-300});
    out.relative_gap = std::abs(out.by_definition - out.by_difference) / scale;
    return out;
}

}  // namespace wdl
