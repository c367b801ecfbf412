#include <doctest.h>

#include <cstdlib>

#include "boxzeta/ffield.hpp"
#include "boxzeta/kernels.hpp"

using namespace boxzeta;
namespace k = boxzeta::kernels;

TEST_CASE("isa names round-trip") {
    for (auto isa : {k::Isa::scalar, k::Isa::avx2}) CHECK(k::parse_isa(k::to_string(isa)) == isa);
    CHECK_FALSE(k::parse_isa("neon").has_value());
    CHECK(k::available(k::Isa::scalar));
    CHECK(k::available(k::active()));
}

TEST_CASE("vector kernels agree with the scalar reference") {
    auto isas = k::available_isas();
    auto primes = odd_primes_up_to(200);
    primes.insert(primes.end(), {251, 397, 401});
    for (auto p : primes) {
        PrimeContext ctx(p);
        const auto surface = k::scalar::surface_cone_sum(ctx);
        const auto curve = k::scalar::curve_cone_sum(ctx);
        for (auto isa : isas) {
            INFO("p = " << p << ", isa = " << k::to_string(isa));
            REQUIRE(k::surface_cone_sum(ctx, isa) == surface);
            REQUIRE(k::curve_cone_sum(ctx, isa) == curve);
        }
    }
}

TEST_CASE("cone sums are 1 mod p-1") {
    for (auto p : odd_primes_up_to(150)) {
        PrimeContext ctx(p);
        CHECK((k::surface_cone_sum(ctx) - 1) % (p - 1) == 0);
        CHECK((k::curve_cone_sum(ctx) - 1) % (p - 1) == 0);
    }
}
