#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "wdl/analysis.hpp"
#include "wdl/arith.hpp"
#include "wdl/compensated.hpp"
#include "wdl/error.hpp"
#include "wdl/voronoi.hpp"

namespace wdl {

namespace {

constexpr double pi = std::numbers::pi;

// Integrand split as P * g(u) + c * K(u) so boundary evaluations can be
// shared between neighbouring pieces with different step values P.
struct Sample {
    double g = 0.0;
    double k = 0.0;
};

struct Integrand {
    const KernelSpec& spec;
    double t;
    double scale;  // 4 sqrt(2) pi / q

    Sample at(double u) const {
        const double kw = kernel_weight(u, spec);
        return {scale / std::sqrt(t + spec.alpha * u) * kw, kw};
    }
};

struct Simpson {
    const Integrand& f;
    double p;
    double c;
    int max_depth;

    double value(const Sample& s) const { return p * s.g + c * s.k; }

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = value(f.at(lm));
        const double frm = value(f.at(rm));
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double diff = left + right - whole;
        if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
        if (depth >= max_depth) {
            std::ostringstream os;
            os << "kernel quadrature did not converge on [" << a << ", " << b
               << "] at depth " << depth << " (error estimate " << std::abs(diff) / 15.0
               << ", tolerance " << tol << ")";
            throw NumericalError(os.str());
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    double integrate(double a, double b, const Sample& sa, const Sample& sb, double tol) const {
        const double fa = value(sa);
        const double fb = value(sb);
        const double fm = value(f.at(0.5 * (a + b)));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, tol, 0);
    }
};

}  // namespace

KernelSpec make_kernel_spec(const Params& params, double alpha, int zeta) {
    if (zeta != 1 && zeta != -1) throw DomainError("kernel: zeta must be +1 or -1");
    const std::uint64_t n0 = n0_index(params);
    if (!(alpha > std::sqrt(static_cast<double>(n0)))) {
        throw DomainError("kernel: alpha must exceed sqrt(n0) = " +
                          std::to_string(std::sqrt(static_cast<double>(n0))));
    }
    KernelSpec spec;
    spec.alpha = alpha;
    spec.zeta = zeta;
    spec.n0 = n0;
    spec.zeta_prime = static_cast<int>(-delta_d2(n0, params) * zeta);
    return spec;
}

double kernel_weight(double u, const KernelSpec& spec) {
    if (!(std::abs(u) <= 1.0)) throw DomainError("kernel: |u| must be <= 1");
    const double omega = 4.0 * pi * spec.alpha * std::sqrt(static_cast<double>(spec.n0));
    return (1.0 - std::abs(u)) * (1.0 + spec.zeta * std::sin(omega * u));
}

double kernel_predicted(double t, const KernelSpec& spec) {
    const double n0 = static_cast<double>(spec.n0);
    // 4 pi t sqrt(n0) reduced mod 2 pi through the fractional part of 2 t sqrt(n0).
    const double turns = 2.0 * t * std::sqrt(n0);
    const double frac = turns - std::floor(turns);
    return spec.zeta_prime / (2.0 * std::pow(n0, 0.75)) *
           std::sin(2.0 * pi * frac - 0.75 * pi);
}

KernelTestResult kernel_test(double t, const KernelSpec& spec, const JumpTable& table,
                             double f_coeff, const KernelQuadratureOptions& options) {
    const double alpha = spec.alpha;
    if (!(t - alpha >= 1.0)) throw DomainError("kernel: need t - alpha >= 1");
    const double q = table.params().q1q2();
    const double hi_arg = q * (t + alpha) * (t + alpha);
    if (hi_arg > static_cast<double>(table.max_index())) {
        throw RangeError("kernel: q1q2 (t + alpha)^2 = " + std::to_string(hi_arg) +
                         " exceeds X = " + std::to_string(table.max_index()));
    }

    const double scale = 4.0 * std::numbers::sqrt2 * pi / q;
    const Integrand f{spec, t, scale};
    const double c = scale * f_coeff * std::pow(q, 0.25);
    const double lo_arg = q * (t - alpha) * (t - alpha);

    auto node = [&](std::uint64_t m) {
        return (std::sqrt(static_cast<double>(m) / q) - t) / alpha;
    };
    auto segment_of = [&](double u) {
        const double tp = t + alpha * u;
        return table.segment_value(static_cast<std::uint64_t>(std::floor(q * tp * tp)));
    };

    KernelTestResult res;
    CompensatedSum<double> acc;
    auto piece = [&](double a, double b, const Sample& sa, const Sample& sb) {
        if (b <= a) return;
        const double p = segment_of(0.5 * (a + b));
        const Simpson s{f, p, c, options.max_depth};
        acc.add(s.integrate(a, b, sa, sb, options.abs_tolerance * 0.5 * (b - a)));
        ++res.pieces;
    };

    double a = -1.0;
    Sample sa = f.at(a);
    bool kink_done = false;
    auto advance = [&](double b) {
        if (!kink_done && b > 0.0) {
            kink_done = true;
            if (a < 0.0) {
                const Sample s0 = f.at(0.0);
                piece(a, 0.0, sa, s0);
                a = 0.0;
                sa = s0;
            }
        }
        const Sample sb = f.at(b);
        piece(a, b, sa, sb);
        a = b;
        sa = sb;
    };

    const auto m_first = static_cast<std::uint64_t>(std::floor(lo_arg)) + 1;
    const auto m_last = static_cast<std::uint64_t>(std::ceil(hi_arg)) - 1;
    for (std::uint64_t m = m_first; m <= m_last; ++m) {
        const double u = node(m);
        if (u > a && u < 1.0) advance(u);
    }
    advance(1.0);

    res.lhs = acc.value();
    res.predicted = kernel_predicted(t, spec);
    res.residual = res.lhs - res.predicted;
    return res;
}

JumpTable single_term_table(const Params& params, std::uint64_t x_max) {
    const std::uint64_t n0 = n0_index(params);
    const double coef = static_cast<double>(delta_d2(n0, params)) *
                        std::pow(static_cast<double>(n0), -0.75);
    const auto q = params.modulus_product();
    const double qd = static_cast<double>(q);
    auto term = [&](std::uint64_t n) {
        const double x = (static_cast<double>(n) + 0.5) / qd;
        return voronoi_amplitude(x, q) * coef * voronoi_phase_cos(static_cast<double>(n0), x);
    };
    std::vector<double> prefix(x_max + 1, 0.0);
    std::vector<double> jumps(x_max + 1, 0.0);
    for (std::uint64_t n = 1; n <= x_max; ++n) {
        prefix[n] = term(n);
        jumps[n] = prefix[n] - prefix[n - 1];
    }
    return JumpTable(params, std::move(jumps), std::move(prefix));
}

}  // namespace wdl
