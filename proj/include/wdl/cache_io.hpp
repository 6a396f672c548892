#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>

#include "wdl/jump_table.hpp"

namespace wdl {

// Jump-table cache, little-endian:
//   4 bytes  magic "WDL1"
//   6 x i64  q1, a1, q2, a2, weight_kind, X
//   X x f64  c(1) .. c(X)
inline constexpr char cache_magic[4] = {'W', 'D', 'L', '1'};
inline constexpr std::size_t cache_header_bytes = 4 + 6 * 8;

struct CacheHeader {
    Params params;
    std::uint64_t x_max = 0;
};

void write_cache(const std::filesystem::path& path, const JumpTable& table);
JumpTable read_cache(const std::filesystem::path& path);
CacheHeader read_cache_header(const std::filesystem::path& path);

/// Incremental writer for block-streamed sieves.
class CacheWriter {
public:
    CacheWriter(const std::filesystem::path& path, const Params& params, std::uint64_t x_max);

    void append(std::span<const double> jumps);
    /// Throws if fewer or more than X jumps were appended.
    void close();

private:
    std::ofstream out_;
    std::uint64_t expected_ = 0;
    std::uint64_t written_ = 0;
};

}  // namespace wdl
