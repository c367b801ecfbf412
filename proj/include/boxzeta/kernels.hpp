#pragma once

// Enumeration kernels behind the point counts. Every kernel has a scalar
// reference version; vectorized versions must return bit-identical sums and
// are picked at runtime from what the CPU reports.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "boxzeta/ffield.hpp"

namespace boxzeta::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

// Compiled in and supported by the running CPU.
bool available(Isa isa);
std::vector<Isa> available_isas();

// Widest available ISA, unless BOXZETA_KERNEL names another available one.
Isa active();

// Affine-cone sum for the cuboid surface:
//   sum over (a1,a2,a3) in F_p^3 of T[s] * T[s-a1^2] * T[s-a2^2] * T[s-a3^2],
// s = a1^2 + a2^2 + a3^2, T = sqrt_count.
std::uint64_t surface_cone_sum(const PrimeContext& ctx, Isa isa);
inline std::uint64_t surface_cone_sum(const PrimeContext& ctx) { return surface_cone_sum(ctx, active()); }

// Affine-cone sum for the curve u^2 = 2xy, v^2 = x^2 - y^2, w^2 = x^2 + y^2 over F_p:
//   sum over (x,y) in F_p^2 of T[2xy] * T[x^2-y^2] * T[x^2+y^2].
std::uint64_t curve_cone_sum(const PrimeContext& ctx, Isa isa);
inline std::uint64_t curve_cone_sum(const PrimeContext& ctx) { return curve_cone_sum(ctx, active()); }

namespace scalar {
std::uint64_t surface_cone_sum(const PrimeContext& ctx);
std::uint64_t curve_cone_sum(const PrimeContext& ctx);
}  // namespace scalar

#if defined(BOXZETA_HAVE_AVX2)
namespace avx2 {
std::uint64_t surface_cone_sum(const PrimeContext& ctx);
std::uint64_t curve_cone_sum(const PrimeContext& ctx);
}  // namespace avx2
#endif

}  // namespace boxzeta::kernels
