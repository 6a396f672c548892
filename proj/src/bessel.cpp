#include "wdl/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

double j1_series(double z) {
    const long double h = 0.5L * z;
    const long double h2 = h * h;
    long double term = h;
    long double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -h2 / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

// Miller's backward recurrence normalized by J0 + 2 sum J_{2k} = 1.
double j1_miller(double z) {
    const int start = 2 * ((static_cast<int>(z) + 40) / 2);
    long double next = 0.0L;
    long double cur = 1e-300L;
    long double norm = 0.0L;
    long double j1 = 0.0L;
    for (int n = start; n >= 1; --n) {
        const long double prev = 2.0L * n / z * cur - next;  // J_{n-1}
        next = cur;
        cur = prev;
        if (n - 1 == 1) j1 = cur;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0 ? 1.0L : 2.0L) * cur;
    }
    return static_cast<double>(j1 / norm);
}

// Hankel expansion: sqrt(2/(pi z)) (P cos chi - Q sin chi), chi = z - 3 pi/4.
double j1_asymptotic(double z) {
    constexpr long double mu = 4.0L;
    const long double inv8z = 1.0L / (8.0L * z);
    long double p = 1.0L;
    long double q = 0.0L;
    long double a = 1.0L;  // a_k / z^k, a_k = prod (mu - (2j-1)^2) / (k! 8^k)
    long double last = 1e300L;
    for (int k = 1; k < 200; ++k) {
        const long double odd = 2.0L * k - 1.0L;
        a *= (mu - odd * odd) * inv8z / k;
        const long double mag = std::abs(a);
        if (mag > last) break;  // asymptotic series started to diverge
        last = mag;
        // k = 1: q += a, k = 2: p -= a, k = 3: q -= a, k = 4: p += a, ...
        switch (k % 4) {
            case 1: q += a; break;
            case 2: p -= a; break;
            case 3: q -= a; break;
            case 0: p += a; break;
        }
        if (mag < 1e-21L) break;
    }
    const long double s = std::sin(static_cast<long double>(z));
    const long double c = std::cos(static_cast<long double>(z));
    const long double inv_sqrt2 = 1.0L / std::numbers::sqrt2_v<long double>;
    const long double cos_chi = (s - c) * inv_sqrt2;
    const long double sin_chi = -(s + c) * inv_sqrt2;
    const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * z));
    return static_cast<double>(amp * (p * cos_chi - q * sin_chi));
}

struct Branch {
    double alpha;
    double beta;
    double sign;
};

}  // namespace

double j1(double z) {
    if (!(z >= 0.0)) throw DomainError("j1: z must be >= 0");
    if (z > 1e7) throw DomainError("j1: z above 1e7 is outside the validated range");
    if (z <= 8.0) return j1_series(z);
    if (z <= 25.0) return j1_miller(z);
    return j1_asymptotic(z);
}

BesselSeriesConfig BesselSeriesConfig::from_params(const Params& params, double radius) {
    return {static_cast<double>(params.a1) / static_cast<double>(params.q1),
            static_cast<double>(params.a2) / static_cast<double>(params.q2), radius};
}

double bessel_constant_term(double theta2) {
    const long double a = std::numbers::pi_v<long double> * theta2;
    return static_cast<double>(-std::cos(a) / std::sin(a) / 4.0L);
}

std::vector<BesselPartialSum> bessel_partial_sums(double x, double theta1, double theta2,
                                                  std::vector<double> radii) {
    if (!(x > 0.0)) throw DomainError("bessel series: x must be positive");
    if (!(theta1 > 0.0 && theta1 < 1.0 && theta2 > 0.0 && theta2 < 1.0)) {
        throw DomainError("bessel series: theta1, theta2 must lie in (0, 1)");
    }
    if (radii.empty()) return {};
    std::sort(radii.begin(), radii.end());
    if (!(radii.front() > 0.0)) throw DomainError("bessel series: radius must be positive");
    const double r_max = radii.back();
    const double p_max = r_max / x;

    const Branch branches[4] = {{theta1, theta2, 1.0},
                                {1.0 - theta1, theta2, 1.0},
                                {theta1, 1.0 - theta2, -1.0},
                                {1.0 - theta1, 1.0 - theta2, -1.0}};
    long double estimate = 0.0L;
    for (const auto& b : branches) {
        if (b.alpha * b.beta > p_max) continue;
        estimate += p_max / b.beta * (std::log(p_max / (b.alpha * b.beta)) + 1.0) / 1.0L + p_max;
    }
    if (estimate > static_cast<long double>(bessel_max_terms)) {
        throw ResourceError("bessel series: radius " + std::to_string(r_max) + " needs about " +
                            std::to_string(static_cast<double>(estimate)) +
                            " terms, above the budget; lower the radius");
    }

    struct Term {
        double product;
        double value;
    };
    std::vector<Term> terms;
    terms.reserve(static_cast<std::size_t>(estimate) + 16);
    const double four_pi = 4.0 * std::numbers::pi;
    for (const auto& b : branches) {
        for (double m = 0.0;; m += 1.0) {
            const double u = m + b.alpha;
            if (u * b.beta > p_max) break;
            for (double n = 0.0;; n += 1.0) {
                const double p = u * (n + b.beta);
                if (p > p_max) break;
                terms.push_back({p, b.sign * j1(four_pi * std::sqrt(p * x)) / std::sqrt(p)});
            }
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.product < b.product; });

    const double constant = bessel_constant_term(theta2);
    const double scale = std::sqrt(x) / 4.0;
    std::vector<BesselPartialSum> out;
    out.reserve(radii.size());
    CompensatedSum<long double> acc;
    std::size_t i = 0;
    for (const double radius : radii) {
        const double cutoff = radius / x;
        const double band_lo = 0.5 * cutoff;
        double lo = 1e300;
        double hi = -1e300;
        auto record = [&] {
            const double v = constant + scale * static_cast<double>(acc.value());
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        };
        while (i < terms.size() && terms[i].product <= cutoff) {
            acc.add(terms[i].value);
            ++i;
            if (terms[i - 1].product > band_lo) record();
        }
        record();
        BesselPartialSum ps;
        ps.radius = radius;
        ps.terms = i;
        ps.value = constant + scale * static_cast<double>(acc.value());
        ps.oscillation = hi - lo;
        out.push_back(ps);
    }
    return out;
}

BesselResult bessel_identity_eval(double x, const BesselSeriesConfig& cfg) {
    if (!(cfg.radius > 0.0)) throw DomainError("bessel series: radius must be positive");
    const auto sums = bessel_partial_sums(x, cfg.theta1, cfg.theta2, {cfg.radius});
    return {sums.front().value, sums.front().terms};
}

}  // namespace wdl
