#include "wdl/exactsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

void check_raw_argument(double x, const JumpTable& table) {
    if (!(x >= 0.0)) throw DomainError("argument must be nonnegative, got " + std::to_string(x));
    if (x > static_cast<double>(table.max_index())) {
        throw RangeError("argument " + std::to_string(x) + " exceeds table range X = " +
                         std::to_string(table.max_index()));
    }
}

long double ipow(long double v, int k) {
    long double r = 1.0L;
    for (int i = 0; i < k; ++i) r *= v;
    return r;
}

// Integral over raw [a, b] of g(P(N)) on each segment [N, N+1).
template <typename G>
double integrate_segments(const JumpTable& table, double a, double b, G g) {
    CompensatedSum<long double> acc;
    const auto first = static_cast<std::uint64_t>(std::floor(a));
    const auto last = static_cast<std::uint64_t>(std::floor(b));
    if (first == last) {
        acc.add(static_cast<long double>(b - a) * g(table.segment_value(first)));
        return static_cast<double>(acc.value());
    }
    acc.add(static_cast<long double>(static_cast<double>(first + 1) - a) *
            g(table.segment_value(first)));
    for (std::uint64_t n = first + 1; n < last; ++n) acc.add(g(table.segment_value(n)));
    if (static_cast<double>(last) < b) {
        acc.add(static_cast<long double>(b - static_cast<double>(last)) *
                g(table.segment_value(last)));
    }
    return static_cast<double>(acc.value());
}

template <typename G>
double integrate_domain(const JumpTable& table, double a, double b, int k, Domain domain,
                        const IntegrateOptions& options, G g) {
    if (k < 1 || k > options.max_power) {
        throw DomainError("power k must lie in [1, " + std::to_string(options.max_power) + "]");
    }
    if (a > b) throw DomainError("integration bounds must satisfy a <= b");
    if (a == b) return 0.0;
    const double scale = domain == Domain::normalized ? table.params().q1q2() : 1.0;
    const double ra = a * scale;
    const double rb = b * scale;
    check_raw_argument(ra, table);
    check_raw_argument(rb, table);
    const double raw = integrate_segments(table, ra, rb, g);
    const double out = raw / scale;
    if (!std::isfinite(out)) throw RangeError("integral overflowed for k = " + std::to_string(k));
    return out;
}

}  // namespace

double s_eval(double x, const JumpTable& table) {
    check_raw_argument(x, table);
    const double fl = std::floor(x);
    const auto n = static_cast<std::uint64_t>(fl);
    if (fl == x && n >= 1) return table.prefix(n) - 0.5 * table.jump(n);
    return table.prefix(n);
}

double s_star(double t, const JumpTable& table, double f_coeff) {
    if (!(t >= 1.0)) throw DomainError("s_star: t must be >= 1");
    const double q = table.params().q1q2();
    const double arg = q * t * t;
    const double s = s_eval(arg, table);
    return 4.0 * std::numbers::sqrt2 * std::numbers::pi / q / std::sqrt(t) *
           (s + f_coeff * std::pow(arg, 0.25));
}

PlusMinus plus_minus(double s) {
    return {0.5 * (std::abs(s) + s), 0.5 * (std::abs(s) - s)};
}

PlusMinus s_plus_minus(double t, const JumpTable& table) { return plus_minus(s_eval(t, table)); }

double integrate_power(const JumpTable& table, double a, double b, int k, Domain domain,
                       const IntegrateOptions& options) {
    return integrate_domain(table, a, b, k, domain, options,
                            [k](double v) { return ipow(v, k); });
}

double integrate_part_power(const JumpTable& table, double a, double b, int k, int sign,
                            Domain domain, const IntegrateOptions& options) {
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    return integrate_domain(table, a, b, k, domain, options, [k, sign](double v) {
        const double part = std::max(sign * v, 0.0);
        return ipow(part, k);
    });
}

StepFunctionView::StepFunctionView(const JumpTable& table, Domain domain)
    : table_(&table), domain_(domain) {}

double StepFunctionView::to_raw(double arg) const {
    return domain_ == Domain::normalized ? arg * table_->params().q1q2() : arg;
}

double StepFunctionView::max_argument() const {
    const auto x = static_cast<double>(table_->max_index());
    return domain_ == Domain::normalized ? x / table_->params().q1q2() : x;
}

double StepFunctionView::operator()(double arg) const { return s_eval(to_raw(arg), *table_); }

double StepFunctionView::integrate_power(double a, double b, int k) const {
    return wdl::integrate_power(*table_, a, b, k, domain_);
}

SpotCheckResult spot_check_prefixes(const JumpTable& table, int samples, std::uint64_t seed) {
    SpotCheckResult out;
    const std::uint64_t x = table.max_index();
    if (x == 0 || samples <= 0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, x);
    std::vector<std::uint64_t> idx(static_cast<std::size_t>(samples));
    for (auto& i : idx) i = pick(rng);
    std::sort(idx.begin(), idx.end());

    CompensatedSum<long double> exact;
    std::uint64_t n = 0;
    for (const std::uint64_t target : idx) {
        while (n < target) {
            ++n;
            exact.add(table.jump(n));
        }
        const long double e = exact.value();
        const long double err = std::abs(static_cast<long double>(table.prefix(target)) - e) /
                                std::max(std::abs(e), 1.0L);
        ++out.samples;
        if (static_cast<double>(err) >= out.max_relative_error) {
            out.max_relative_error = static_cast<double>(err);
            out.worst_index = target;
        }
    }
    return out;
}

}  // namespace wdl
