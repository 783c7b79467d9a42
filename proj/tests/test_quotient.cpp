#include <doctest.h>

#include <random>

#include "fermat_lab/quotient.hpp"
#include "oracles.hpp"

using namespace fermat_lab;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("fermat_quotient examples") {
    CHECK(fermat_quotient(1, Prime(5)) == 0);
    CHECK(fermat_quotient(1, Prime(2147483647)) == 0);
    CHECK(fermat_quotient(2, Prime(1093)) == 0);
    CHECK(fermat_quotient(2, Prime(3511)) == 0);
    CHECK(fermat_quotient(2, Prime(5)) == 3);
    CHECK(fermat_quotient(4, Prime(5)) == 1);
    CHECK(code_of([] { fermat_quotient(10, Prime(5)); }) == ErrorCode::DivisibleByP);
    CHECK(code_of([] { fermat_quotient(0, Prime(5)); }) == ErrorCode::DivisibleByP);
}

TEST_CASE("fermat_quotient matches repeated multiplication for p <= 200") {
    for (u64 q : primes_in_range(3, 200)) {
        const Prime p(q);
        for (u64 u = 1; u < q * q; u += (u % q == q - 1) ? 2 : 1) {
            REQUIRE(fermat_quotient(static_cast<i64>(u), p) == oracle::fermat_quotient(u, q));
        }
    }
}

TEST_CASE("fermat_quotient depends only on u mod p^2, including negative u") {
    std::mt19937_64 rng(11);
    const auto primes = primes_in_range(3, 10000);
    for (int i = 0; i < 20000; ++i) {
        const Prime p(primes[rng() % primes.size()]);
        i64 u = static_cast<i64>(rng() % p.squared());
        if (u % static_cast<i64>(p.value()) == 0) ++u;
        const i64 m = static_cast<i64>(p.squared());
        REQUIRE(fermat_quotient(u, p) == fermat_quotient(u + m, p));
        REQUIRE(fermat_quotient(u, p) == fermat_quotient(u - 3 * m, p));
    }
    const QuotientContext ctx(Prime(7));
    CHECK(ctx(-1) == fermat_quotient(48, Prime(7)));
    CHECK(ctx(-1) == 0);
}

TEST_CASE("multiplicativity on 10^4 random pairs for every p <= 1000") {
    std::mt19937_64 rng(12);
    for (u64 q : primes_in_range(3, 1000)) {
        const Prime p(q);
        const QuotientContext ctx(p);
        const u64 m = p.squared();
        for (int i = 0; i < 10000; ++i) {
            u64 u = rng() % m, v = rng() % m;
            if (u % q == 0) ++u;
            if (v % q == 0) ++v;
            REQUIRE(ctx.of_reduced(mul_mod(u, v, m)) == (ctx.of_reduced(u) + ctx.of_reduced(v)) % q);
        }
    }
}

TEST_CASE("quotient_of_rational") {
    const Prime p5(5);
    CHECK(quotient_of_rational(7, 7, p5) == 0);
    CHECK(quotient_of_rational(4, 2, p5) == 3);
    CHECK(quotient_of_rational(4, 2, p5) == fermat_quotient(2, p5));
    CHECK(code_of([&] { quotient_of_rational(3, 10, p5); }) == ErrorCode::DivisibleByP);

    // Both evaluation orders of q(s^s / (s+1)^{s+1}) agree.
    for (u64 q : primes_in_range(3, 500)) {
        const Prime p(q);
        const u64 m = p.squared();
        for (u64 s = 1; s + 2 <= q; ++s) {
            const u64 num = pow_mod(s, s, m), den = pow_mod(s + 1, s + 1, m);
            const u64 w = mul_mod(num, inv_mod(den, m), m);
            REQUIRE(quotient_of_rational(static_cast<i64>(num), static_cast<i64>(den), p) ==
                    fermat_quotient(static_cast<i64>(w), p));
        }
    }
}

TEST_CASE("shift identity q(u + vp) = q(u) - v/u") {
    const Prime p5(5);
    CHECK(shift_identity(3, 0, p5) == fermat_quotient(3, p5));
    CHECK(shift_identity(2, 3, p5) == 4);
    CHECK(fermat_quotient(17, p5) == 4);
    CHECK(code_of([&] { shift_identity(5, 1, p5); }) == ErrorCode::DivisibleByP);

    for (u64 q : primes_in_range(3, 10000)) {
        REQUIRE(shift_identity(-1, 1, Prime(q)) == 1);
        REQUIRE(fermat_quotient(static_cast<i64>(q - 1), Prime(q)) == 1);
    }
    for (u64 q : primes_in_range(3, 200)) {
        const Prime p(q);
        for (u64 u = 1; u < q; ++u) {
            for (u64 v = 0; v < q; ++v) {
                REQUIRE(fermat_quotient(static_cast<i64>(u + v * q), p) ==
                        shift_identity(static_cast<i64>(u), static_cast<i64>(v), p));
            }
        }
    }
}

TEST_CASE("build_table examples and errors") {
    const QuotientTable t5 = build_table(Prime(5), 4);
    CHECK(t5.limit() == 4);
    CHECK(std::vector<std::uint32_t>(t5.values().begin(), t5.values().end()) == std::vector<std::uint32_t>{0, 3, 1, 1});
    CHECK(build_table(Prime(101), 1).values().size() == 1);
    CHECK(build_table(Prime(101), 1)[1] == 0);
    CHECK(code_of([] { build_table(Prime(5), 5); }) == ErrorCode::LimitTooLarge);
    CHECK(code_of([] { build_table(Prime(5), 0); }) == ErrorCode::LimitTooLarge);
    CHECK(code_of([&] { (void)t5.at(5); }) == ErrorCode::LimitTooLarge);
    CHECK(code_of([] { build_table(Prime(101), 60, FactorSieve(50)); }) == ErrorCode::LimitTooLarge);
}

TEST_CASE("build_table(p, p-1) equals fermat_quotient entrywise for all p <= 2000") {
    for (u64 q : primes_in_range(3, 2000)) {
        const Prime p(q);
        const QuotientTable t = build_table(p, q - 1);
        REQUIRE(t.limit() == q - 1);
        for (u64 w = 1; w < q; ++w) REQUIRE(t[w] == fermat_quotient(static_cast<i64>(w), p));
    }
}

TEST_CASE("table rows are additive: q(uv) = q(u) + q(v) for uv <= limit") {
    const Prime p(100003);
    const QuotientTable t = build_table(p, 5000);
    for (u64 u = 1; u <= 70; ++u) {
        for (u64 v = 1; u * v <= 5000; ++v) REQUIRE(t[u * v] == (t[u] + t[v]) % p);
    }
}

TEST_CASE("shared FactorSieve gives the same tables") {
    const FactorSieve sieve(60000);
    CHECK(sieve.smallest_factor(1) == 1);
    CHECK(sieve.smallest_factor(91) == 7);
    CHECK(sieve.cofactor(91) == 13);
    CHECK(sieve.primes().size() == primes_in_range(2, 60000).size());
    for (u64 q : {3ull, 1093ull, 50021ull, 119993ull}) {
        const Prime p(q);
        const u64 limit = std::min<u64>(q - 1, 60000);
        const QuotientTable a = build_table(p, limit);
        const QuotientTable b = build_table(p, limit, sieve);
        REQUIRE(std::equal(a.values().begin(), a.values().end(), b.values().begin(), b.values().end()));
    }
}
