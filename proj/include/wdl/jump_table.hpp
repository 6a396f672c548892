#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wdl/params.hpp"

namespace wdl {

/// Step-function representation of S: jump c(N) at every integer N <= X and
/// the compensated prefix sums P(N) = sum_{M <= N} c(M). Index 0 holds 0.
class JumpTable {
public:
    JumpTable() = default;

    /// Takes jumps indexed 1..X (jumps[0] must be 0) and builds prefixes.
    JumpTable(Params params, std::vector<double> jumps);

    /// Takes precomputed prefixes (used by the block sieve).
    JumpTable(Params params, std::vector<double> jumps, std::vector<double> prefix);

    const Params& params() const { return params_; }
    std::uint64_t max_index() const { return x_max_; }

    double jump(std::uint64_t n) const { return jumps_[n]; }
    double prefix(std::uint64_t n) const { return prefix_[n]; }

    /// Value of S on the open segment (n, n+1); n may equal X.
    double segment_value(std::uint64_t n) const { return prefix_[n]; }

    std::span<const double> jumps() const { return jumps_; }
    std::span<const double> prefixes() const { return prefix_; }

private:
    Params params_{};
    std::uint64_t x_max_ = 0;
    std::vector<double> jumps_{0.0};
    std::vector<double> prefix_{0.0};
};

}  // namespace wdl
