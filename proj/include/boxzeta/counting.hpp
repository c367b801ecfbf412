#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "boxzeta/ffield.hpp"
#include "boxzeta/kernels.hpp"

namespace boxzeta {

// E32: y^2 = x^3 - x, E64: y^2 = x^3 + x.
enum class VarietyId { cuboid_surface, curve_x, singular_locus, e32, e64 };

std::string_view to_string(VarietyId v);

enum class CountMethod { fast, brute };

std::string_view to_string(CountMethod m);

struct CountRecord {
    VarietyId variety;
    std::uint32_t p;
    int degree;  // 1 or 2
    std::int64_t count;
    CountMethod method;
};

/// Symbolic coordinate in {0, +-1, +-i}.
struct SymbolicCoord {
    int real = 0;  // coefficient of 1
    int imag = 0;  // coefficient of i

    friend bool operator==(const SymbolicCoord&, const SymbolicCoord&) = default;
};

enum class Rationality { q, q_i };

struct SingularPoint {
    // [a1 : a2 : a3 : b1 : b2 : b3 : c]
    std::array<SymbolicCoord, 7> coords;
    Rationality rationality;
};

// The 48 singular points of the cuboid surface, in table order.
const std::vector<SingularPoint>& singular_points();

// Substitutes into a1^2 + b1^2 - c^2, a2^2 + b2^2 - c^2, a3^2 + b3^2 - c^2,
// a1^2 + a2^2 + a3^2 - c^2 with exact Gaussian-integer arithmetic.
bool satisfies_surface_equations(const SingularPoint& pt);

// O(p^3) cone accumulation; requires (C - 1) divisible by (p - 1).
CountRecord count_surface_fast(std::uint32_t p, kernels::Isa isa = kernels::active());

// Enumerates F_p^7; refuses p > 13.
CountRecord count_surface_brute(std::uint32_t p);

// Over F_q, q = p^degree. Degree 2 requires p <= 200.
CountRecord count_curve_x(std::uint32_t p, int degree, kernels::Isa isa = kernels::active());

// Full enumeration of F_q^5 for the curve; q^5 capped at about 3e7.
CountRecord count_curve_x_brute(std::uint32_t p, int degree);

// Double sum over (x, y) in F_{p^2}^2 without the homogeneity reduction used by
// count_curve_x(p, 2); p^4 cost, used to cross-check it.
std::int64_t count_curve_x_deg2_direct(std::uint32_t p);

// Number of F_p-rational points among the 48 singular points.
int count_singular(std::uint32_t p);

enum class ExceptionalHypothesis { permutation, paper };

std::string_view to_string(ExceptionalHypothesis h);

// Predicted #S(F_p) for the minimal resolution, given #S-bar(F_p).
std::int64_t model_resolved_count(std::uint32_t p, std::int64_t surface_count, ExceptionalHypothesis h);
std::int64_t model_resolved_count(std::uint32_t p, ExceptionalHypothesis h);

// a_p = p + 1 - #E(F_p) for E32 or E64.
std::int64_t count_elliptic(VarietyId curve, std::uint32_t p);

}  // namespace boxzeta
