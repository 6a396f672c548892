#include "wdl/params.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "wdl/error.hpp"

namespace wdl {

std::string_view to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::cos_sin: return "cos_sin";
        case WeightKind::sin_sin: return "sin_sin";
        case WeightKind::cos_cos: return "cos_cos";
    }
    return "unknown";
}

WeightKind weight_kind_from_string(std::string_view name) {
    if (name == "cos_sin") return WeightKind::cos_sin;
    if (name == "sin_sin") return WeightKind::sin_sin;
    if (name == "cos_cos") return WeightKind::cos_cos;
    throw DomainError("unknown weight kind '" + std::string(name) + "'");
}

void validate(const Params& p) {
    auto check = [](std::int64_t a, std::int64_t q, const char* which) {
        if (q < 1) {
            throw DomainError(std::string("modulus q") + which + " must be >= 1");
        }
        if (a < 1 || a > q) {
            throw DomainError(std::string("residue a") + which + " must satisfy 1 <= a <= q");
        }
        if (std::gcd(a, q) != 1) {
            throw DomainError(std::string("gcd(a") + which + ", q" + which + ") must be 1");
        }
    };
    check(p.a1, p.q1, "1");
    check(p.a2, p.q2, "2");
    if (p.q1 > (std::int64_t{1} << 30) || p.q2 > (std::int64_t{1} << 30)) {
        throw DomainError("moduli above 2^30 are not supported");
    }
}

std::vector<std::string> theorem_warnings(const Params& p) {
    std::vector<std::string> out;
    if (p.kind == WeightKind::cos_sin) {
        if (p.q1 < 2) out.emplace_back("q1 < 2: outside the sign-change theorem range");
        if (p.q2 < 3) out.emplace_back("q2 < 3: delta_d2 vanishes, S is identically 0 or degenerate");
    }
    return out;
}

namespace {

struct SinCos {
    double sin;
    double cos;
};

// sin/cos of 2 pi r / q for 0 <= r < q using octant symmetry, so values at
// r and q - r are exact mirrors and multiples of 1/8 come out symmetric.
SinCos sincos_frac(std::int64_t k, std::int64_t q) {
    std::int64_t r = k % q;
    if (r < 0) r += q;
    // Reflect to [0, 1/2]: sin flips sign, cos unchanged.
    double sin_sign = 1.0;
    if (2 * r > q) {
        r = q - r;
        sin_sign = -1.0;
    }
    // Reflect to [0, 1/4]: cos flips sign, sin unchanged.
    double cos_sign = 1.0;
    std::int64_t num = r;
    std::int64_t den = q;
    if (4 * r > q) {
        // angle = pi - 2 pi (q - 2r)/(2q)
        num = q - 2 * r;
        den = 2 * q;
        cos_sign = -1.0;
    }
    // Now fraction num/den lies in [0, 1/4].
    double s = 0.0;
    double c = 0.0;
    if (num == 0) {
        s = 0.0;
        c = 1.0;
    } else if (4 * num == den) {
        s = 1.0;
        c = 0.0;
    } else if (8 * num == den) {
        s = c = static_cast<double>(std::sqrt(0.5L));
    } else if (8 * num < den) {
        const long double a = 2.0L * std::numbers::pi_v<long double> * num / den;
        s = static_cast<double>(std::sin(a));
        c = static_cast<double>(std::cos(a));
    } else {
        // complement: angle = pi/2 - 2 pi (den - 4 num)/(4 den)
        const long double a =
            2.0L * std::numbers::pi_v<long double> * (den - 4 * num) / (4.0L * den);
        s = static_cast<double>(std::cos(a));
        c = static_cast<double>(std::sin(a));
    }
    return {sin_sign * s, cos_sign * c};
}

}  // namespace

double cos_two_pi_frac(std::int64_t k, std::int64_t q) {
    double c = sincos_frac(k, q).cos;
    return c == 0.0 ? 0.0 : c;
}

double sin_two_pi_frac(std::int64_t k, std::int64_t q) {
    double s = sincos_frac(k, q).sin;
    return s == 0.0 ? 0.0 : s;
}

ResidueWeightTables make_weight_tables(const Params& p) {
    validate(p);
    ResidueWeightTables w;
    w.m_weights.resize(static_cast<std::size_t>(p.q1));
    w.n_weights.resize(static_cast<std::size_t>(p.q2));
    const bool m_is_cos = p.kind != WeightKind::sin_sin;
    const bool n_is_sin = p.kind != WeightKind::cos_cos;
    for (std::int64_t r = 0; r < p.q1; ++r) {
        const std::int64_t k = (r * p.a1) % p.q1;
        w.m_weights[r] = m_is_cos ? cos_two_pi_frac(k, p.q1) : sin_two_pi_frac(k, p.q1);
    }
    for (std::int64_t r = 0; r < p.q2; ++r) {
        const std::int64_t k = (r * p.a2) % p.q2;
        w.n_weights[r] = n_is_sin ? sin_two_pi_frac(k, p.q2) : cos_two_pi_frac(k, p.q2);
    }
    return w;
}

}  // namespace wdl
