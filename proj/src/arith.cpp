#include "wdl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "wdl/compensated.hpp"
#include "wdl/error.hpp"

namespace wdl {

namespace {

std::int64_t mod(std::int64_t v, std::int64_t q) {
    std::int64_t r = v % q;
    return r < 0 ? r + q : r;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Indicator weights of the Voronoi coefficient:
//   unsigned: [u = a1] + [u = -a1] (mod q1)
//   signed:   [v = a2] - [v = -a2] (mod q2)
struct ClassWeights {
    std::int64_t q1, plus1, minus1;
    std::int64_t q2, plus2, minus2;

    explicit ClassWeights(const Params& p)
        : q1(p.q1), plus1(mod(p.a1, p.q1)), minus1(mod(-p.a1, p.q1)),
          q2(p.q2), plus2(mod(p.a2, p.q2)), minus2(mod(-p.a2, p.q2)) {}

    int unsigned_weight(std::uint64_t u) const {
        const auto r = static_cast<std::int64_t>(u % static_cast<std::uint64_t>(q1));
        return (r == plus1 ? 1 : 0) + (r == minus1 ? 1 : 0);
    }
    int signed_weight(std::uint64_t v) const {
        const auto r = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(q2));
        return (r == plus2 ? 1 : 0) - (r == minus2 ? 1 : 0);
    }
};

// 2^(J+1), or max() when it does not fit. J = -1 allows only l = h.
std::uint64_t dyadic_ratio(int J) {
    if (J < -1) throw DomainError("J must be >= -1");
    if (J + 1 >= 63) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << (J + 1);
}

// Largest l allowed for a given h: 2^(J+1) h, or max() on overflow.
std::uint64_t l_limit(std::uint64_t h, std::uint64_t ratio) {
    if (ratio == std::numeric_limits<std::uint64_t>::max() ||
        h > std::numeric_limits<std::uint64_t>::max() / ratio) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return ratio * h;
}

template <typename HWeight, typename LWeight>
HalfCount hyperbola_piece(std::uint64_t n, std::uint64_t H, int J, HWeight h_weight,
                          LWeight l_weight) {
    if (n == 0) throw DomainError("n must be >= 1");
    const std::uint64_t ratio = dyadic_ratio(J);
    HalfCount out;
    const std::uint64_t h_max = std::min(H, isqrt(n));
    for (std::uint64_t h = 1; h <= h_max; ++h) {
        if (n % h != 0) continue;
        const std::uint64_t l = n / h;
        const std::uint64_t l_top = l_limit(h, ratio);
        if (l < h || l > l_top) continue;
        const int w = h_weight(h) * l_weight(l);
        if (w == 0) continue;
        const bool boundary = (l == h) || (l == l_top);
        out.twice += static_cast<std::int64_t>(w) * (boundary ? 1 : 2);
    }
    return out;
}

// Adds twice-weights of all n = h*l in [n_lo, n_hi] with h <= H, h <= l <= 2^(J+1) h.
// h_class(h) gives the h weight; l runs over the residue classes in l_classes
// (modulus l_mod) with the matching weights.
template <typename HWeight>
std::vector<std::int64_t> hyperbola_table(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t H,
                                          int J, HWeight h_weight, std::int64_t l_mod,
                                          const std::vector<std::pair<std::int64_t, int>>& l_classes) {
    if (n_lo == 0) n_lo = 1;
    if (n_hi < n_lo) return {};
    const std::uint64_t ratio = dyadic_ratio(J);
    std::vector<std::int64_t> out(n_hi - n_lo + 1, 0);
    const std::uint64_t h_max = std::min(H, isqrt(n_hi));
    const auto q = static_cast<std::uint64_t>(l_mod);
    for (std::uint64_t h = 1; h <= h_max; ++h) {
        const int hw = h_weight(h);
        if (hw == 0) continue;
        const std::uint64_t l_lo = std::max(h, (n_lo + h - 1) / h);
        std::uint64_t l_hi = n_hi / h;
        const std::uint64_t l_top = l_limit(h, ratio);
        l_hi = std::min(l_hi, l_top);
        if (l_hi < l_lo) continue;
        for (const auto& [cls, lw] : l_classes) {
            // first l >= l_lo with l = cls (mod q)
            std::uint64_t l = l_lo + (static_cast<std::uint64_t>(cls) + q - l_lo % q) % q;
            for (; l <= l_hi; l += q) {
                const bool boundary = (l == h) || (l == l_top);
                out[h * l - n_lo] += static_cast<std::int64_t>(hw * lw) * (boundary ? 1 : 2);
            }
        }
    }
    return out;
}

}  // namespace

std::uint64_t residue_divisor_count(std::uint64_t n, std::int64_t b1, std::int64_t b2,
                                    const Params& params) {
    validate(params);
    if (n == 0) throw DomainError("residue_divisor_count: n must be >= 1");
    const std::int64_t r1 = mod(b1, params.q1);
    const std::int64_t r2 = mod(b2, params.q2);
    const auto q1 = static_cast<std::uint64_t>(params.q1);
    const auto q2 = static_cast<std::uint64_t>(params.q2);
    std::uint64_t count = 0;
    const std::uint64_t root = isqrt(n);
    for (std::uint64_t u = 1; u <= root; ++u) {
        if (n % u != 0) continue;
        const std::uint64_t v = n / u;
        if (u % q1 == static_cast<std::uint64_t>(r1) && v % q2 == static_cast<std::uint64_t>(r2)) {
            ++count;
        }
        if (v != u && v % q1 == static_cast<std::uint64_t>(r1) &&
            u % q2 == static_cast<std::uint64_t>(r2)) {
            ++count;
        }
    }
    return count;
}

std::uint64_t n0_index(const Params& params) {
    validate(params);
    if (params.q2 <= 2) {
        throw DomainError("n0_index: q2 <= 2 makes delta_d2 vanish identically; no n0 exists");
    }
    const auto m1 = static_cast<std::uint64_t>(std::min(params.a1, params.q1 - params.a1));
    const auto m2 = static_cast<std::uint64_t>(std::min(params.a2, params.q2 - params.a2));
    // For q1 = 1 the a1-classes are all of Z, so the smallest admissible u is 1.
    return std::max<std::uint64_t>(m1, 1) * m2;
}

std::int64_t delta_d2(std::uint64_t n, const Params& params) {
    validate(params);
    if (n == 0) throw DomainError("delta_d2: n must be >= 1");
    const ClassWeights cw(params);
    std::int64_t total = 0;
    const std::uint64_t root = isqrt(n);
    for (std::uint64_t u = 1; u <= root; ++u) {
        if (n % u != 0) continue;
        const std::uint64_t v = n / u;
        total += cw.unsigned_weight(u) * cw.signed_weight(v);
        if (v != u) total += cw.unsigned_weight(v) * cw.signed_weight(u);
    }
    return total;
}

std::vector<std::int64_t> delta_d2_table(std::uint64_t n_max, const Params& params) {
    validate(params);
    std::vector<std::int64_t> out(n_max + 1, 0);
    const ClassWeights cw(params);
    if (params.q2 <= 2) return out;
    for (std::uint64_t u = 1; u <= n_max; ++u) {
        const int uw = cw.unsigned_weight(u);
        if (uw == 0) continue;
        for (std::uint64_t v = 1, idx = u; idx <= n_max; ++v, idx += u) {
            const int vw = cw.signed_weight(v);
            if (vw != 0) out[idx] += uw * vw;
        }
    }
    return out;
}

HalfCount delta_d21(std::uint64_t n, std::uint64_t H, int J, const Params& params) {
    validate(params);
    const ClassWeights cw(params);
    return hyperbola_piece(
        n, H, J, [&](std::uint64_t h) { return cw.signed_weight(h); },
        [&](std::uint64_t l) { return cw.unsigned_weight(l); });
}

HalfCount delta_d22(std::uint64_t n, std::uint64_t H, int J, const Params& params) {
    validate(params);
    const ClassWeights cw(params);
    return hyperbola_piece(
        n, H, J, [&](std::uint64_t h) { return cw.unsigned_weight(h); },
        [&](std::uint64_t l) { return cw.signed_weight(l); });
}

std::vector<std::int64_t> delta_d21_table(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t H,
                                          int J, const Params& params) {
    validate(params);
    const ClassWeights cw(params);
    // l carries [l = a1] + [l = -a1]; both classes listed even when equal.
    const std::vector<std::pair<std::int64_t, int>> l_classes = {{cw.plus1, 1}, {cw.minus1, 1}};
    return hyperbola_table(
        n_lo, n_hi, H, J, [&](std::uint64_t h) { return cw.signed_weight(h); }, params.q1,
        l_classes);
}

std::vector<std::int64_t> delta_d22_table(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t H,
                                          int J, const Params& params) {
    validate(params);
    const ClassWeights cw(params);
    std::vector<std::pair<std::int64_t, int>> l_classes;
    if (cw.plus2 != cw.minus2) l_classes = {{cw.plus2, 1}, {cw.minus2, -1}};
    return hyperbola_table(
        n_lo, n_hi, H, J, [&](std::uint64_t h) { return cw.unsigned_weight(h); }, params.q2,
        l_classes);
}

void sieve_jump_block(std::uint64_t lo, std::uint64_t hi, const ResidueWeightTables& weights,
                      std::span<double> out) {
    if (lo == 0 || hi < lo || out.size() < hi - lo + 1) {
        throw DomainError("sieve_jump_block: bad block bounds");
    }
    const auto& w1 = weights.m_weights;
    const auto& w2 = weights.n_weights;
    const std::uint64_t q1 = w1.size();
    const std::uint64_t q2 = w2.size();
    const std::uint64_t len = hi - lo + 1;
    std::vector<double> comp(len, 0.0);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(len), 0.0);

    auto add = [&](std::uint64_t idx, double value) {
        double& s = out[idx];
        const double t = s + value;
        if (std::abs(s) >= std::abs(value)) {
            comp[idx] += (s - t) + value;
        } else {
            comp[idx] += (value - t) + s;
        }
        s = t;
    };

    // Every factorization N = u v is visited once through d = min(u, v).
    const std::uint64_t d_max = isqrt(hi);
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        const double wd1 = w1[d % q1];
        const double wd2 = w2[d % q2];
        std::uint64_t m = std::max(d, (lo + d - 1) / d);
        if (m * d > hi) continue;
        std::uint64_t r1 = m % q1;
        std::uint64_t r2 = m % q2;
        for (std::uint64_t n = m * d; n <= hi; n += d) {
            const double term = (m == d) ? wd1 * wd2 : wd1 * w2[r2] + w1[r1] * wd2;
            if (term != 0.0) add(n - lo, term);
            ++m;
            if (++r1 == q1) r1 = 0;
            if (++r2 == q2) r2 = 0;
        }
    }
    for (std::uint64_t i = 0; i < len; ++i) out[i] += comp[i];
}

void for_each_jump_block(std::uint64_t x_max, const Params& params, std::uint64_t block_size,
                         const std::function<void(std::uint64_t, std::span<const double>)>& callback) {
    if (block_size == 0) throw DomainError("block_size must be positive");
    const auto weights = make_weight_tables(params);
    std::vector<double> buf(block_size);
    for (std::uint64_t lo = 1; lo <= x_max; lo += block_size) {
        const std::uint64_t hi = std::min(x_max, lo + block_size - 1);
        sieve_jump_block(lo, hi, weights, buf);
        callback(lo, std::span<const double>(buf.data(), hi - lo + 1));
    }
}

JumpTable sieve_jumps(std::uint64_t x_max, const Params& params, const SieveOptions& options) {
    validate(params);
    if (x_max == 0) throw DomainError("sieve_jumps: X must be >= 1");
    const long double bytes = 16.0L * (static_cast<long double>(x_max) + 1.0L);
    if (bytes > static_cast<long double>(options.memory_budget_bytes)) {
        throw ResourceError("sieve_jumps: X = " + std::to_string(x_max) + " needs " +
                            std::to_string(static_cast<std::uint64_t>(bytes)) +
                            " bytes, above the in-core budget; use block-streaming mode "
                            "(for_each_jump_block / `wdl sieve --cache`)");
    }
    const std::uint64_t block = std::max<std::uint64_t>(options.block_size, 1024);
    const auto weights = make_weight_tables(params);
    std::vector<double> jumps(x_max + 1, 0.0);

    const std::uint64_t n_blocks = (x_max + block - 1) / block;
    const unsigned threads =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, n_blocks));
    auto worker = [&](unsigned id) {
        for (std::uint64_t b = id; b < n_blocks; b += threads) {
            const std::uint64_t lo = 1 + b * block;
            const std::uint64_t hi = std::min(x_max, lo + block - 1);
            sieve_jump_block(lo, hi, weights, std::span<double>(jumps.data() + lo, hi - lo + 1));
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    }
    return JumpTable(params, std::move(jumps));
}

}  // namespace wdl
