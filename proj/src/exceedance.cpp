#include <algorithm>
#include <cmath>
#include <string>

#include "wdl/analysis.hpp"
#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

void check_window(double lo, double hi, const JumpTable& table) {
    if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("window must satisfy 0 <= lo <= hi");
    if (hi > static_cast<double>(table.max_index())) {
        throw RangeError("window end " + std::to_string(hi) + " exceeds X = " +
                         std::to_string(table.max_index()));
    }
}

// Calls visit(a, b, end) for each segment piece [a, b) of [lo, hi], where
// [a, end) is the part on which sign*S exceeds kappa t^{1/4} (end <= a if empty).
template <typename Visit>
void for_each_exceedance(double lo, double hi, const JumpTable& table, double kappa, int sign,
                         Visit visit) {
    const auto first = static_cast<std::uint64_t>(std::floor(lo));
    const auto last = static_cast<std::uint64_t>(std::floor(hi));
    for (std::uint64_t n = first; n <= last; ++n) {
        const double a = std::max(lo, static_cast<double>(n));
        const double b = std::min(hi, static_cast<double>(n + 1));
        if (b <= a) continue;
        const double v = sign * table.segment_value(n);
        double end = a;
        if (v > 0.0) {
            // sign*S > kappa t^{1/4}  <=>  t < (v / kappa)^4
            end = kappa == 0.0 ? b : std::min(b, std::pow(v / kappa, 4.0));
        }
        visit(a, b, end);
    }
}

}  // namespace

double exceedance_threshold(double t, double c5, std::int64_t q1q2) {
    return c5 * std::pow(static_cast<double>(q1q2), 0.75) * std::pow(t, 0.25);
}

ExceedanceMeasure exceedance_measure(double T, const JumpTable& table, double c5) {
    if (c5 < 0.0) throw DomainError("exceedance: c5 must be >= 0");
    check_window(T, 2.0 * T, table);
    const double kappa = c5 * std::pow(table.params().q1q2(), 0.75);
    ExceedanceMeasure out;
    for (int sign : {1, -1}) {
        CompensatedSum<double> acc;
        for_each_exceedance(T, 2.0 * T, table, kappa, sign, [&](double a, double, double end) {
            if (end > a) acc.add(end - a);
        });
        (sign == 1 ? out.plus : out.minus) = acc.value();
    }
    return out;
}

std::vector<Run> threshold_runs(double lo, double hi, const JumpTable& table, double c5, int sign) {
    if (c5 < 0.0) throw DomainError("runs: c5 must be >= 0");
    if (sign != 1 && sign != -1) throw DomainError("runs: sign must be +1 or -1");
    check_window(lo, hi, table);
    const double kappa = c5 * std::pow(table.params().q1q2(), 0.75);
    std::vector<Run> runs;
    bool open = false;
    for_each_exceedance(lo, hi, table, kappa, sign, [&](double a, double b, double end) {
        if (end > a) {
            if (open && runs.back().end == a) {
                runs.back().end = end;
            } else {
                runs.push_back({a, end});
            }
            open = end == b;
        } else {
            open = false;
        }
    });
    return runs;
}

RunCount single_sign_runs(double T, const JumpTable& table, double c5, double L) {
    if (!(L > 0.0)) throw DomainError("runs: L must be positive");
    RunCount out;
    for (int sign : {1, -1}) {
        std::uint64_t count = 0;
        double longest = 0.0;
        for (const Run& r : threshold_runs(T, 2.0 * T, table, c5, sign)) {
            count += static_cast<std::uint64_t>(std::floor(r.length() / L));
            longest = std::max(longest, r.length());
        }
        if (sign == 1) {
            out.plus = count;
            out.longest_plus = longest;
        } else {
            out.minus = count;
            out.longest_minus = longest;
        }
    }
    return out;
}

}  // namespace wdl
