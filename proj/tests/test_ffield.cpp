#include <doctest.h>

#include <numeric>

#include "boxzeta/ffield.hpp"
#include "oracles.hpp"

using namespace boxzeta;

TEST_CASE("legendre symbol examples") {
    CHECK(legendre(1, 7) == 1);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(2, 5) == -1);
    CHECK(legendre(0, 5) == 0);
    CHECK(legendre(-1, 5) == 1);
    CHECK(legendre(-1, 7) == -1);
}

TEST_CASE("legendre symbol matches square listing") {
    for (std::int64_t p = 3; p < 200; ++p) {
        if (!oracle::prime(p)) continue;
        for (std::int64_t a = -p; a < 2 * p; ++a) REQUIRE(legendre(a, p) == oracle::legendre(a, p));
    }
}

TEST_CASE("prime helpers") {
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK_FALSE(is_prime(1));
    auto ps = odd_primes_up_to(97);
    CHECK(ps.size() == 24);
    CHECK(ps.front() == 3);
    CHECK(ps.back() == 97);
    CHECK(odd_primes_up_to(2).empty());
    CHECK_THROWS_AS(require_odd_prime(2), BadPrimeError);
    CHECK_THROWS_AS(require_odd_prime(9), std::invalid_argument);
    CHECK_NOTHROW(require_odd_prime(3));
}

TEST_CASE("sqrt_count over F_p") {
    PrimeContext c7(7), c5(5);
    CHECK(c7.sqrt_count(0) == 1);
    CHECK(c7.sqrt_count(2) == 2);
    CHECK(c5.sqrt_count(2) == 0);
    for (auto p : odd_primes_up_to(200)) {
        PrimeContext ctx(p);
        const auto& t = ctx.sqrt_count_table();
        REQUIRE(std::accumulate(t.begin(), t.end(), 0) == static_cast<int>(p));
        for (std::uint32_t a = 1; a < p; ++a) REQUIRE(t[a] == 1 + oracle::legendre(a, p));
        REQUIRE(legendre(ctx.nonresidue(), p) == -1);
    }
}

TEST_CASE("quadratic characters") {
    CHECK(character_value(QuadraticCharacter::chi_m4, 5) == 1);
    CHECK(character_value(QuadraticCharacter::chi_8, 7) == 1);
    CHECK(character_value(QuadraticCharacter::chi_m8, 5) == -1);
    CHECK_THROWS(character_value(QuadraticCharacter::chi_8, 4));
    for (std::int64_t n = 1; n < 400; n += 2) {
        const int m4 = character_value(QuadraticCharacter::chi_m4, n);
        const int p8 = character_value(QuadraticCharacter::chi_8, n);
        const int m8 = character_value(QuadraticCharacter::chi_m8, n);
        CHECK(m8 == m4 * p8);  // (-8|n) = (-4|n)(8|n)
        CHECK(character_value(QuadraticCharacter::chi_m4, n + 4) == m4);
        CHECK(character_value(QuadraticCharacter::chi_8, n + 8) == p8);
        if (oracle::prime(n) && n > 2) {
            CHECK(m4 == oracle::legendre(-1, n));
            CHECK(p8 == oracle::legendre(2, n));
            CHECK(m8 == oracle::legendre(-2, n));
        }
    }
}

TEST_CASE("F_9 by exhaustion") {
    PrimeContext c3(3);
    QuadraticExtension f9(c3);
    CHECK(f9.order() == 9);
    CHECK(f9.sqrt_count({0, 0}) == 1);
    // Every element of F_3 is a square in F_9.
    CHECK(f9.sqrt_count({c3.nonresidue(), 0}) == 2);
    CHECK(f9.sqrt_count({1, 0}) == 2);

    std::vector<int> counted(9, 0);
    for (std::uint32_t i = 0; i < 9; ++i) {
        auto x = f9.element(i);
        counted[f9.index(f9.mul(x, x))]++;
    }
    for (std::uint32_t i = 0; i < 9; ++i) CHECK(f9.sqrt_count(f9.element(i)) == counted[i]);
}

TEST_CASE("F_{p^2} field axioms and square counts") {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 31u}) {
        PrimeContext ctx(p);
        QuadraticExtension f(ctx);
        const auto table = f.sqrt_count_table();
        REQUIRE(std::accumulate(table.begin(), table.end(), 0LL) == static_cast<long long>(p) * p);
        std::vector<int> counted(f.order(), 0);
        for (std::uint32_t i = 0; i < f.order(); ++i) {
            auto x = f.element(i);
            counted[f.index(f.mul(x, x))]++;
            if (i != 0) {
                REQUIRE(f.mul(x, f.inverse(x)) == QuadExtElement{1, 0});
                REQUIRE(f.pow(x, f.order() - 1) == QuadExtElement{1, 0});
            }
            REQUIRE(f.sub(f.add(x, {1, 2 % p}), {1, 2 % p}) == x);
        }
        for (std::uint32_t i = 0; i < f.order(); ++i) REQUIRE(table[i] == counted[i]);
        // F_p sits inside the squares of F_{p^2}.
        for (std::uint32_t a = 1; a < p; ++a) REQUIRE(f.sqrt_count({a, 0}) == 2);
    }
    PrimeContext c5(5);
    QuadraticExtension f25(c5);
    CHECK_THROWS_AS(f25.inverse({0, 0}), std::domain_error);
    PrimeContext big(1009);
    CHECK_THROWS(QuadraticExtension(big));
}
