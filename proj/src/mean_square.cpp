#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "wdl/analysis.hpp"
#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

void require_within(double hi, const JumpTable& table, const char* what) {
    if (hi > static_cast<double>(table.max_index())) {
        throw RangeError(std::string(what) + ": needs arguments up to " + std::to_string(hi) +
                         " but X = " + std::to_string(table.max_index()));
    }
}

double part(double v, int sign) { return std::max(sign * v, 0.0); }

// Sliding extrema over the fixed-width index window [n, n + width - 1].
class SlidingExtrema {
public:
    SlidingExtrema(const JumpTable& table, int sign, std::uint64_t width)
        : table_(table), sign_(sign), width_(width) {}

    WindowExtrema at(std::uint64_t n) {
        if (maxq_.empty()) next_ = n;
        while (next_ < n + width_) push(next_++);
        while (maxq_.front() < n) maxq_.pop_front();
        while (minq_.front() < n) minq_.pop_front();
        return {value(minq_.front()), value(maxq_.front())};
    }

private:
    double value(std::uint64_t i) const { return part(table_.segment_value(i), sign_); }

    void push(std::uint64_t i) {
        const double v = value(i);
        while (!maxq_.empty() && value(maxq_.back()) <= v) maxq_.pop_back();
        maxq_.push_back(i);
        while (!minq_.empty() && value(minq_.back()) >= v) minq_.pop_back();
        minq_.push_back(i);
    }

    const JumpTable& table_;
    int sign_;
    std::uint64_t width_;
    std::uint64_t next_ = 0;
    std::deque<std::uint64_t> maxq_;
    std::deque<std::uint64_t> minq_;
};

double worst_sq(const WindowExtrema& e, double base) {
    return std::max((e.max - base) * (e.max - base), (e.min - base) * (e.min - base));
}

}  // namespace

MsqResult short_interval_msq(double T, double h, const JumpTable& table) {
    if (!(T >= 1.0)) throw DomainError("msq: T must be >= 1");
    if (!(h >= 0.0)) throw DomainError("msq: h must be >= 0");
    MsqResult out;
    if (h < 1.0) out.warnings.push_back("h < 1 is outside the range 1 <= h <= sqrt(T)/2");
    if (h > 0.5 * std::sqrt(T)) out.warnings.push_back("h > sqrt(T)/2 is outside the range 1 <= h <= sqrt(T)/2");
    const double q = table.params().q1q2();
    const double lo = q;
    const double hi = q * T;
    const double shift = q * h;
    require_within(hi + shift, table, "msq");
    if (h == 0.0 || hi <= lo) return out;

    const double whole = std::floor(shift);
    const double frac = shift - whole;
    const auto d = static_cast<std::uint64_t>(whole);
    CompensatedSum<long double> acc;
    const auto first = static_cast<std::uint64_t>(std::floor(lo));
    const auto last = static_cast<std::uint64_t>(std::floor(hi));
    for (std::uint64_t n = first; n <= last; ++n) {
        const double a = std::max(lo, static_cast<double>(n));
        const double b = std::min(hi, static_cast<double>(n + 1));
        if (b <= a) continue;
        const double base = table.segment_value(n);
        // tau + shift moves into the next segment at n + 1 - frac.
        const double split = frac > 0.0 ? static_cast<double>(n + 1) - frac : b;
        const double s1 = std::clamp(split, a, b);
        const double d1 = table.segment_value(n + d) - base;
        acc.add(static_cast<long double>(d1) * d1 * (s1 - a));
        if (s1 < b) {
            const double d2 = table.segment_value(n + d + 1) - base;
            acc.add(static_cast<long double>(d2) * d2 * (b - s1));
        }
    }
    out.value = static_cast<double>(acc.value() / q);
    return out;
}

MaxIncrementMsq max_increment_msq(double T, double H0, const JumpTable& table) {
    if (!(T >= 0.0)) throw DomainError("maxmsq: T must be >= 0");
    if (!(H0 >= 0.0)) throw DomainError("maxmsq: H0 must be >= 0");
    const double q = table.params().q1q2();
    const double lo = q * T;
    const double hi = 2.0 * q * T;
    const double shift = q * H0;
    require_within(hi + shift, table, "maxmsq");

    const double whole = std::floor(shift);
    const double frac = shift - whole;
    const auto d = static_cast<std::uint64_t>(whole);
    MaxIncrementMsq out;
    for (int sign : {1, -1}) {
        SlidingExtrema narrow(table, sign, d + 1);
        CompensatedSum<long double> acc;
        const auto first = static_cast<std::uint64_t>(std::floor(lo));
        const auto last = static_cast<std::uint64_t>(std::floor(hi));
        for (std::uint64_t n = first; n <= last; ++n) {
            const double a = std::max(lo, static_cast<double>(n));
            const double b = std::min(hi, static_cast<double>(n + 1));
            if (b <= a) continue;
            const double base = part(table.segment_value(n), sign);
            const WindowExtrema e = narrow.at(n);
            const double split = frac > 0.0 ? static_cast<double>(n + 1) - frac : b;
            const double s1 = std::clamp(split, a, b);
            acc.add(static_cast<long double>(worst_sq(e, base)) * (s1 - a));
            if (s1 < b) {
                const double extra = part(table.segment_value(n + d + 1), sign);
                const WindowExtrema wide{std::min(e.min, extra), std::max(e.max, extra)};
                acc.add(static_cast<long double>(worst_sq(wide, base)) * (b - s1));
            }
        }
        (sign == 1 ? out.plus : out.minus) = static_cast<double>(acc.value() / q);
    }
    return out;
}

WindowExtrema part_window_extrema(double lo, double hi, int sign, const JumpTable& table) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("window must satisfy 0 <= lo <= hi");
    require_within(hi, table, "window");
    const double v_lo = part(s_eval(lo, table), sign);
    const double v_hi = part(s_eval(hi, table), sign);
    WindowExtrema e{std::min(v_lo, v_hi), std::max(v_lo, v_hi)};
    // Open segments meeting (lo, hi); interior integer values are averages of
    // neighbouring segments and so never extend the range.
    const auto first = static_cast<std::uint64_t>(std::floor(lo));
    const double top = std::ceil(hi) - 1.0;
    for (std::uint64_t n = first; static_cast<double>(n) <= top; ++n) {
        const double v = part(table.segment_value(n), sign);
        e.min = std::min(e.min, v);
        e.max = std::max(e.max, v);
    }
    return e;
}

double max_increment_sq(double t, double H0, int sign, const JumpTable& table) {
    if (!(H0 >= 0.0)) throw DomainError("H0 must be >= 0");
    const double q = table.params().q1q2();
    const double lo = q * t;
    const double base = part(s_eval(lo, table), sign);
    if (H0 == 0.0) return 0.0;
    return worst_sq(part_window_extrema(lo, lo + q * H0, sign, table), base);
}

double omega_detector(double t, double H0, double delta, int sign, const JumpTable& table) {
    const double q = table.params().q1q2();
    const double s = part(s_eval(q * t, table), sign);
    const double shift = delta * q * std::pow(t, 0.25);
    return s * s - 4.0 * max_increment_sq(t, H0, sign, table) - shift * shift;
}

PartSquareRatio part_square_ratio(double T, const JumpTable& table) {
    if (!(T > 0.0)) throw DomainError("T must be positive");
    const double q = table.params().q1q2();
    const double denom = q * q * std::pow(T, 1.5);
    return {integrate_part_power(table, T, 2.0 * T, 2, 1, Domain::normalized) / denom,
            integrate_part_power(table, T, 2.0 * T, 2, -1, Domain::normalized) / denom};
}

}  // namespace wdl
