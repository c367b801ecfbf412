#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace boxzeta::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<Integer>>;

enum class SolveStatus { unique, rank_deficient, inconsistent };

struct SolveResult {
    SolveStatus status;
    std::size_t rank;
    std::vector<Rational> solution;  // filled only when status == unique
};

// Row echelon form by Bareiss fraction-free elimination; every division is
// checked to be exact. Returns the rank of the first `coeff_cols` columns.
std::size_t bareiss_echelon(IntMatrix& m, std::size_t coeff_cols);

std::size_t rank(IntMatrix m);

// Exact solve of A x = b for a possibly overdetermined integer system.
SolveResult solve(const IntMatrix& a, const std::vector<Integer>& b);

}  // namespace boxzeta::exact
