#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "wdl/arith.hpp"
#include "wdl/error.hpp"

using wdl::Params;

namespace {

const std::vector<Params> param_sets = {
    {1, 3, 1, 4}, {2, 5, 3, 7}, {1, 2, 1, 3}, {3, 8, 2, 9}, {1, 4, 1, 3}, {1, 1, 1, 5}, {5, 12, 7, 10},
};

}  // namespace

TEST_CASE("params validation") {
    CHECK_NOTHROW(wdl::validate({1, 3, 1, 4}));
    CHECK_THROWS_AS(wdl::validate({0, 3, 1, 4}), wdl::DomainError);
    CHECK_THROWS_AS(wdl::validate({4, 3, 1, 4}), wdl::DomainError);
    CHECK_THROWS_AS(wdl::validate({2, 4, 1, 4}), wdl::DomainError);
    CHECK_THROWS_AS(wdl::validate({1, 3, 2, 4}), wdl::DomainError);
    CHECK(wdl::theorem_warnings({1, 3, 1, 4}).empty());
    CHECK_FALSE(wdl::theorem_warnings({1, 1, 1, 4}).empty());
    CHECK_FALSE(wdl::theorem_warnings({1, 3, 1, 2}).empty());
}

TEST_CASE("weight kind names round trip") {
    for (auto k : {wdl::WeightKind::cos_sin, wdl::WeightKind::sin_sin, wdl::WeightKind::cos_cos}) {
        CHECK(wdl::weight_kind_from_string(wdl::to_string(k)) == k);
    }
    CHECK_THROWS_AS(wdl::weight_kind_from_string("tan_tan"), wdl::DomainError);
}

TEST_CASE("residue weight tables") {
    for (const auto& p : param_sets) {
        const auto w = wdl::make_weight_tables(p);
        REQUIRE(w.m_weights.size() == static_cast<std::size_t>(p.q1));
        REQUIRE(w.n_weights.size() == static_cast<std::size_t>(p.q2));
        for (std::int64_t r = 1; r < p.q1; ++r) CHECK(w.m_weights[r] == w.m_weights[p.q1 - r]);
        for (std::int64_t r = 1; r < p.q2; ++r) CHECK(w.n_weights[r] == -w.n_weights[p.q2 - r]);
        for (std::int64_t r = 0; r < p.q1; ++r) {
            CHECK(std::abs(w.m_weights[r] - static_cast<double>(oracle::direct_weight(r, p.a1, p.q1, false))) <= 1e-15);
        }
        for (std::int64_t r = 0; r < p.q2; ++r) {
            CHECK(std::abs(w.n_weights[r] - static_cast<double>(oracle::direct_weight(r, p.a2, p.q2, true))) <= 1e-15);
        }
    }
    CHECK(wdl::cos_two_pi_frac(1, 4) == 0.0);
    CHECK(wdl::sin_two_pi_frac(1, 2) == 0.0);
    CHECK(wdl::sin_two_pi_frac(1, 8) == std::numbers::sqrt2 / 2);
}

TEST_CASE("residue_divisor_count examples") {
    CHECK(wdl::residue_divisor_count(1, 1, 1, {1, 3, 1, 4}) == 1);
    CHECK(wdl::residue_divisor_count(6, 2, 3, {2, 5, 3, 7}) == 1);
    CHECK(wdl::residue_divisor_count(12, 0, 0, {1, 3, 1, 4}) == oracle::divisor_pairs(12, 0, 3, 0, 4));
    CHECK(wdl::residue_divisor_count(12, 0, 0, {1, 3, 1, 4}) == 1);
    CHECK_THROWS_AS(wdl::residue_divisor_count(0, 1, 1, {1, 3, 1, 4}), wdl::DomainError);
    for (const auto& p : param_sets) {
        for (std::int64_t n = 1; n <= 300; ++n) {
            for (std::int64_t b1 = 0; b1 < p.q1; ++b1) {
                for (std::int64_t b2 = 0; b2 < p.q2; ++b2) {
                    REQUIRE(wdl::residue_divisor_count(n, b1, b2, p) ==
                            oracle::divisor_pairs(n, b1, p.q1, b2, p.q2));
                }
            }
        }
    }
}

TEST_CASE("n0 examples and minimality") {
    CHECK(wdl::n0_index({1, 3, 1, 4}) == 1);
    CHECK(wdl::n0_index({2, 5, 3, 7}) == 6);
    CHECK_THROWS_AS(wdl::n0_index({1, 3, 1, 2}), wdl::DomainError);
    CHECK_THROWS_AS(wdl::n0_index({1, 3, 1, 1}), wdl::DomainError);
    for (const auto& p : param_sets) {
        if (p.q2 <= 2) continue;
        const auto n0 = wdl::n0_index(p);
        CHECK(static_cast<double>(n0) < p.q1q2() / 4.0);
        for (std::uint64_t n = 1; n < n0; ++n) CHECK(wdl::delta_d2(n, p) == 0);
        const auto d = std::abs(wdl::delta_d2(n0, p));
        if (p.q1 >= 3) {
            CHECK(d == 1);
        } else {
            CHECK((d == 1 || d == 2));
        }
    }
    // Coinciding +-a1 classes keep both indicator terms.
    CHECK(std::abs(wdl::delta_d2(wdl::n0_index({1, 2, 1, 3}), {1, 2, 1, 3})) == 2);
}

TEST_CASE("delta_d2 examples and consistency") {
    CHECK(wdl::delta_d2(1, {1, 3, 1, 4}) == 1);
    CHECK(wdl::delta_d2(6, {2, 5, 3, 7}) == 1);
    for (std::uint64_t n = 1; n <= 500; ++n) CHECK(wdl::delta_d2(n, {1, 3, 1, 2}) == 0);
    for (const auto& p : param_sets) {
        const auto table = wdl::delta_d2_table(10000, p);
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            const std::int64_t four = static_cast<std::int64_t>(
                                          wdl::residue_divisor_count(n, p.a1, p.a2, p) +
                                          wdl::residue_divisor_count(n, p.q1 - p.a1, p.a2, p)) -
                                      static_cast<std::int64_t>(
                                          wdl::residue_divisor_count(n, p.a1, p.q2 - p.a2, p) +
                                          wdl::residue_divisor_count(n, p.q1 - p.a1, p.q2 - p.a2, p));
            REQUIRE(table[n] == four);
            if (n <= 2000) REQUIRE(wdl::delta_d2(n, p) == oracle::delta_d2(static_cast<std::int64_t>(n), p));
        }
    }
}

TEST_CASE("hyperbola pieces examples") {
    const Params p{1, 3, 1, 4};
    CHECK(wdl::delta_d21(1, 2, 0, p).value() == 0.5);
    CHECK(wdl::delta_d22(1, 2, 0, p).value() == 0.5);
    // n = 7: only 1*7 with l/h = 7 > 2 at J = 0.
    CHECK(wdl::delta_d21(7, 2, 0, p).twice == 0);
    CHECK(wdl::delta_d22(7, 2, 0, p).twice == 0);
    for (std::uint64_t n = 1; n <= 300; ++n) {
        CHECK(wdl::delta_d21(n, 10, 2, {1, 3, 1, 2}).twice == 0);
        CHECK(wdl::delta_d22(n, 10, 2, {1, 3, 1, 2}).twice == 0);
    }
}

TEST_CASE("hyperbola pieces against enumeration") {
    for (const auto& p : param_sets) {
        for (int J = -1; J <= 3; ++J) {
            for (std::uint64_t H = 2; H <= 10; ++H) {
                const auto t21 = wdl::delta_d21_table(1, 200, H, J, p);
                const auto t22 = wdl::delta_d22_table(1, 200, H, J, p);
                for (std::int64_t n = 1; n <= 200; ++n) {
                    const auto e21 = oracle::twice_piece(n, H, J, p, true);
                    const auto e22 = oracle::twice_piece(n, H, J, p, false);
                    REQUIRE(wdl::delta_d21(n, H, J, p).twice == e21);
                    REQUIRE(wdl::delta_d22(n, H, J, p).twice == e22);
                    REQUIRE(t21[n - 1] == e21);
                    REQUIRE(t22[n - 1] == e22);
                }
            }
        }
    }
}

TEST_CASE("sieve examples") {
    const auto t = wdl::sieve_jumps(100, {1, 3, 1, 4});
    CHECK(t.jump(1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(t.jump(2) == doctest::Approx(-0.5).epsilon(1e-15));
    const auto z = wdl::sieve_jumps(5000, {1, 3, 1, 2});
    for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE(std::abs(z.jump(n)) <= 1e-12);
}

TEST_CASE("sieve matches brute-force divisor pairs") {
    std::vector<Params> sets = param_sets;
    sets.push_back({2, 5, 3, 7, wdl::WeightKind::sin_sin});
    sets.push_back({2, 5, 3, 7, wdl::WeightKind::cos_cos});
    for (const auto& p : sets) {
        const oracle::DirectWeights w(p, 5000);
        const auto t = wdl::sieve_jumps(5000, p);
        for (std::int64_t n = 1; n <= 5000; ++n) {
            REQUIRE(std::abs(t.jump(n) - oracle::naive_jump(n, w)) <= 1e-10);
        }
    }
}

TEST_CASE("sieve symmetries") {
    for (const auto& p : param_sets) {
        Params flip2 = p;
        flip2.a2 = p.q2 - p.a2;
        Params flip1 = p;
        flip1.a1 = p.q1 - p.a1;
        if (flip2.a2 == 0) flip2.a2 = p.q2;
        if (flip1.a1 == 0) flip1.a1 = p.q1;
        const auto t = wdl::sieve_jumps(3000, p);
        const auto t2 = wdl::sieve_jumps(3000, flip2);
        const auto t1 = wdl::sieve_jumps(3000, flip1);
        for (std::uint64_t n = 1; n <= 3000; ++n) {
            REQUIRE(std::abs(t.jump(n) + t2.jump(n)) <= 1e-12);
            REQUIRE(std::abs(t.jump(n) - t1.jump(n)) <= 1e-12);
        }
    }
}

TEST_CASE("sieve block size, threads and streaming agree") {
    const Params p{2, 5, 3, 7};
    const auto ref = wdl::sieve_jumps(20000, p);
    wdl::SieveOptions o;
    o.block_size = 777;
    o.threads = 3;
    const auto alt = wdl::sieve_jumps(20000, p, o);
    for (std::uint64_t n = 1; n <= 20000; ++n) REQUIRE(std::abs(ref.jump(n) - alt.jump(n)) <= 1e-12);

    std::uint64_t next = 1;
    wdl::for_each_jump_block(20000, p, 999, [&](std::uint64_t first, std::span<const double> b) {
        REQUIRE(first == next);
        for (std::size_t i = 0; i < b.size(); ++i) REQUIRE(std::abs(b[i] - ref.jump(first + i)) <= 1e-12);
        next += b.size();
    });
    CHECK(next == 20001);
}

TEST_CASE("sieve budget") {
    wdl::SieveOptions o;
    o.memory_budget_bytes = 1000;
    CHECK_THROWS_AS(wdl::sieve_jumps(1000, {1, 3, 1, 4}, o), wdl::ResourceError);
    CHECK_THROWS_AS(wdl::sieve_jumps(0, {1, 3, 1, 4}), wdl::DomainError);
}
