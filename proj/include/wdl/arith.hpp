#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wdl/jump_table.hpp"
#include "wdl/params.hpp"

namespace wdl {

/// #{(u, v) : uv = n, u = b1 (mod q1), v = b2 (mod q2)}.
std::uint64_t residue_divisor_count(std::uint64_t n, std::int64_t b1, std::int64_t b2,
                                    const Params& params);

/// Smallest n with delta_d2(n) != 0: min(a1, q1-a1) * min(a2, q2-a2).
/// Throws DomainError when q2 <= 2 (delta_d2 vanishes identically).
std::uint64_t n0_index(const Params& params);

/// Signed residue divisor count
///   d(n; a1, a2) + d(n; -a1, a2) - d(n; a1, -a2) - d(n; -a1, -a2)
/// where d(n; b1, b2) is residue_divisor_count. The +-a1 classes are both kept
/// when they coincide (q1 <= 2).
std::int64_t delta_d2(std::uint64_t n, const Params& params);

/// delta_d2(n) for n = 0..n_max (index 0 holds 0), by sieve.
std::vector<std::int64_t> delta_d2_table(std::uint64_t n_max, const Params& params);

/// Count with half-integer resolution; stores twice the value.
struct HalfCount {
    std::int64_t twice = 0;

    double value() const { return 0.5 * static_cast<double>(twice); }
    bool operator==(const HalfCount&) const = default;
};

/// Hyperbola-split pieces of delta_d2 over factorizations n = h*l with
/// 1 <= h <= H and h <= l <= 2^(J+1) h. Factorizations on the boundary
/// l = h or l = 2^(J+1) h count 1/2.
///
/// delta_d21: h carries the signed a2 classes, l the unsigned +-a1 classes.
/// delta_d22: h carries the unsigned +-a1 classes, l the signed a2 classes.
HalfCount delta_d21(std::uint64_t n, std::uint64_t H, int J, const Params& params);
HalfCount delta_d22(std::uint64_t n, std::uint64_t H, int J, const Params& params);

/// Twice delta_d21 (resp. delta_d22) for n in [n_lo, n_hi], entry i holding
/// n = n_lo + i.
std::vector<std::int64_t> delta_d21_table(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t H,
                                          int J, const Params& params);
std::vector<std::int64_t> delta_d22_table(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t H,
                                          int J, const Params& params);

struct SieveOptions {
    /// In-core budget for jumps + prefixes (16 bytes per index).
    std::uint64_t memory_budget_bytes = std::uint64_t{3} << 30;
    std::uint64_t block_size = std::uint64_t{1} << 20;
    unsigned threads = 1;
};

/// Jump coefficients c(N) = sum_{uv=N} w1(u mod q1) w2(v mod q2) for N <= X.
/// Throws ResourceError if X exceeds the memory budget; use
/// for_each_jump_block to stream instead.
JumpTable sieve_jumps(std::uint64_t x_max, const Params& params, const SieveOptions& options = {});

/// Streams c(N) for N in [1, X] in consecutive blocks: callback(first_n, jumps).
void for_each_jump_block(std::uint64_t x_max, const Params& params, std::uint64_t block_size,
                         const std::function<void(std::uint64_t, std::span<const double>)>& callback);

/// Segmented hyperbola sieve for one block [lo, hi] of jump coefficients.
void sieve_jump_block(std::uint64_t lo, std::uint64_t hi, const ResidueWeightTables& weights,
                      std::span<double> out);

}  // namespace wdl
