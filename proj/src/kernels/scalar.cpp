#include "boxzeta/kernels.hpp"

namespace boxzeta::kernels::scalar {

std::uint64_t surface_cone_sum(const PrimeContext& ctx) {
    const std::uint32_t p = ctx.p();
    const auto& T = ctx.sqrt_count_table();
    const auto& sq = ctx.squares();
    std::uint64_t total = 0;
    for (std::uint32_t a1 = 0; a1 < p; ++a1) {
        for (std::uint32_t a2 = 0; a2 < p; ++a2) {
            for (std::uint32_t a3 = 0; a3 < p; ++a3) {
                std::uint32_t s = (sq[a1] + sq[a2] + sq[a3]) % p;
                std::uint32_t b1 = (s + p - sq[a1]) % p;
                std::uint32_t b2 = (s + p - sq[a2]) % p;
                std::uint32_t b3 = (s + p - sq[a3]) % p;
                total += static_cast<std::uint64_t>(T[s] * T[b1] * T[b2] * T[b3]);
            }
        }
    }
    return total;
}

std::uint64_t curve_cone_sum(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    const auto& T = ctx.sqrt_count_table();
    const auto& sq = ctx.squares();
    std::uint64_t total = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        for (std::uint64_t y = 0; y < p; ++y) {
            auto u = 2 * x * y % p;
            auto v = (sq[x] + p - sq[y]) % p;
            auto w = (sq[x] + sq[y]) % p;
            total += static_cast<std::uint64_t>(T[u] * T[v] * T[w]);
        }
    }
    return total;
}

}  // namespace boxzeta::kernels::scalar
