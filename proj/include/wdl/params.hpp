#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wdl {

enum class WeightKind : std::int64_t { cos_sin = 0, sin_sin = 1, cos_cos = 2 };

std::string_view to_string(WeightKind kind);
WeightKind weight_kind_from_string(std::string_view name);

/// Rational frequencies a1/q1, a2/q2 and the trigonometric pairing of the
/// weighted divisor sum.
struct Params {
    std::int64_t a1 = 1;
    std::int64_t q1 = 3;
    std::int64_t a2 = 1;
    std::int64_t q2 = 4;
    WeightKind kind = WeightKind::cos_sin;

    std::int64_t modulus_product() const { return q1 * q2; }
    double q1q2() const { return static_cast<double>(q1 * q2); }

    bool operator==(const Params&) const = default;
};

/// Throws DomainError unless 1 <= a_i <= q_i and gcd(a_i, q_i) = 1.
void validate(const Params& params);

/// Non-fatal warnings for parameters outside the range where the sign-change
/// theorems apply (q1 >= 2, q2 >= 3 for cos_sin).
std::vector<std::string> theorem_warnings(const Params& params);

// cos(2*pi*k/q) and sin(2*pi*k/q) from the reduced fraction. Exact at
// multiples of 1/4 and exactly even/odd under k -> q - k.
double cos_two_pi_frac(std::int64_t k, std::int64_t q);
double sin_two_pi_frac(std::int64_t k, std::int64_t q);

/// Weight values indexed by residue: m_weights[r] is the weight of m = r
/// (mod q1), n_weights[r] the weight of n = r (mod q2).
struct ResidueWeightTables {
    std::vector<double> m_weights;
    std::vector<double> n_weights;
};

ResidueWeightTables make_weight_tables(const Params& params);

}  // namespace wdl
