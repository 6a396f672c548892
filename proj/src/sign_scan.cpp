#include <algorithm>
#include <cmath>
#include <string>

#include "wdl/analysis.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

int sign_of(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

}  // namespace

ScanReport scan_sign_changes(double t_lo, double t_hi, const JumpTable& table,
                             const ScanOptions& options) {
    if (!(t_lo >= 0.0) || !(t_hi >= t_lo)) throw DomainError("scan: need 0 <= t_lo <= t_hi");
    if (t_hi > static_cast<double>(table.max_index())) {
        throw RangeError("scan: window end " + std::to_string(t_hi) + " exceeds X");
    }
    if (options.c1 < 0.0) throw DomainError("scan: c1 must be >= 0");

    ScanReport rep;
    rep.t_lo = t_lo;
    rep.t_hi = t_hi;
    const double f = options.f_coeff;
    const double tol = options.zero_tolerance;
    int last = 0;

    // Feeds one constant-sign piece starting at `start`.
    auto visit = [&](double start, int s) {
        if (s == 0) return;
        if (last != 0 && s != last) rep.crossings.push_back(start);
        last = s;
    };

    const auto first = static_cast<std::uint64_t>(std::floor(t_lo));
    const auto last_seg = static_cast<std::uint64_t>(std::floor(t_hi));
    for (std::uint64_t n = first; n <= last_seg; ++n) {
        const double a = std::max(t_lo, static_cast<double>(n));
        const double b = std::min(t_hi, static_cast<double>(n + 1));
        if (b <= a && !(a == t_lo && b == t_hi)) continue;
        const double p = table.segment_value(n);

        if (options.c1 > 0.0) {
            const double mid = 0.5 * (a + b);
            const double thr = options.c1 * std::pow(mid, 0.25);
            if (!rep.witness_plus && p >= thr) rep.witness_plus = mid;
            if (!rep.witness_minus && p <= -thr) rep.witness_minus = mid;
        }

        if (f == 0.0) {
            visit(a, sign_of(p, tol));
            continue;
        }
        // p + f t^{1/4} is monotone on the piece; at most one interior root.
        double split = -1.0;
        if (p * f < 0.0) {
            const double root = std::pow(-p / f, 4.0);
            if (root > a && root < b) split = root;
        }
        if (split < 0.0) {
            const double mid = 0.5 * (a + b);
            visit(a, sign_of(p + f * std::pow(mid, 0.25), tol));
        } else {
            const double m1 = 0.5 * (a + split);
            const double m2 = 0.5 * (split + b);
            visit(a, sign_of(p + f * std::pow(m1, 0.25), tol));
            visit(split, sign_of(p + f * std::pow(m2, 0.25), tol));
        }
    }

    double prev = t_lo;
    for (const double c : rep.crossings) {
        rep.max_gap = std::max(rep.max_gap, c - prev);
        prev = c;
    }
    rep.max_gap = std::max(rep.max_gap, t_hi - prev);
    const double denom = std::sqrt(table.params().q1q2() * t_lo);
    rep.gap_ratio = denom > 0.0 ? rep.max_gap / denom : 0.0;
    return rep;
}

}  // namespace wdl
