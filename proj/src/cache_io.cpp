#include "wdl/cache_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <string>

#include "wdl/error.hpp"

namespace wdl {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), 8);
    if (!in) throw DomainError("cache file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void write_header(std::ostream& out, const Params& p, std::uint64_t x_max) {
    out.write(cache_magic, 4);
    put_u64(out, static_cast<std::uint64_t>(p.q1));
    put_u64(out, static_cast<std::uint64_t>(p.a1));
    put_u64(out, static_cast<std::uint64_t>(p.q2));
    put_u64(out, static_cast<std::uint64_t>(p.a2));
    put_u64(out, static_cast<std::uint64_t>(p.kind));
    put_u64(out, x_max);
}

void write_doubles(std::ostream& out, std::span<const double> values) {
    for (const double v : values) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

CacheHeader parse_header(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, cache_magic, 4) != 0) {
        throw DomainError("not a WDL1 jump-table cache");
    }
    CacheHeader h;
    h.params.q1 = static_cast<std::int64_t>(get_u64(in));
    h.params.a1 = static_cast<std::int64_t>(get_u64(in));
    h.params.q2 = static_cast<std::int64_t>(get_u64(in));
    h.params.a2 = static_cast<std::int64_t>(get_u64(in));
    const auto kind = get_u64(in);
    if (kind > 2) throw DomainError("cache: unknown weight kind " + std::to_string(kind));
    h.params.kind = static_cast<WeightKind>(kind);
    h.x_max = get_u64(in);
    validate(h.params);
    return h;
}

}  // namespace

void write_cache(const std::filesystem::path& path, const JumpTable& table) {
    CacheWriter w(path, table.params(), table.max_index());
    w.append(table.jumps().subspan(1));
    w.close();
}

CacheHeader read_cache_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open cache " + path.string());
    return parse_header(in);
}

JumpTable read_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open cache " + path.string());
    const CacheHeader h = parse_header(in);
    const auto size = std::filesystem::file_size(path);
    if (size != cache_header_bytes + 8 * h.x_max) {
        throw DomainError("cache size does not match header X = " + std::to_string(h.x_max));
    }
    std::vector<double> jumps(h.x_max + 1, 0.0);
    std::vector<char> buf(8 * std::min<std::uint64_t>(h.x_max, 1 << 16));
    std::uint64_t n = 1;
    while (n <= h.x_max) {
        const std::uint64_t count = std::min<std::uint64_t>(h.x_max - n + 1, buf.size() / 8);
        in.read(buf.data(), static_cast<std::streamsize>(8 * count));
        if (!in) throw DomainError("cache file truncated");
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint64_t v = 0;
            for (int b = 0; b < 8; ++b) {
                v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[8 * i + b]))
                     << (8 * b);
            }
            jumps[n + i] = std::bit_cast<double>(v);
        }
        n += count;
    }
    return JumpTable(h.params, std::move(jumps));
}

CacheWriter::CacheWriter(const std::filesystem::path& path, const Params& params,
                         std::uint64_t x_max)
    : out_(path, std::ios::binary | std::ios::trunc), expected_(x_max) {
    if (!out_) throw DomainError("cannot write cache " + path.string());
    write_header(out_, params, x_max);
}

void CacheWriter::append(std::span<const double> jumps) {
    if (written_ + jumps.size() > expected_) throw DomainError("cache: more jumps than X");
    write_doubles(out_, jumps);
    written_ += jumps.size();
}

void CacheWriter::close() {
    if (written_ != expected_) {
        throw DomainError("cache: wrote " + std::to_string(written_) + " of " +
                          std::to_string(expected_) + " jumps");
    }
    out_.flush();
    if (!out_) throw DomainError("cache: write failed");
    out_.close();
}

}  // namespace wdl
