#include "boxzeta/exact.hpp"

#include <stdexcept>
#include <utility>

namespace boxzeta::exact {

std::size_t bareiss_echelon(IntMatrix& m, std::size_t coeff_cols) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m.front().size();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < coeff_cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                Integer q, rem;
                boost::multiprecision::divide_qr(num, prev, q, rem);
                if (rem != 0) throw std::logic_error("bareiss_echelon: inexact division");
                m[i][j] = std::move(q);
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

std::size_t rank(IntMatrix m) {
    if (m.empty()) return 0;
    const auto cols = m.front().size();
    return bareiss_echelon(m, cols);
}

SolveResult solve(const IntMatrix& a, const std::vector<Integer>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: row count mismatch");
    if (a.empty()) return {SolveStatus::rank_deficient, 0, {}};
    const std::size_t n = a.front().size();

    IntMatrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve: ragged matrix");
        auto row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    const std::size_t r = bareiss_echelon(aug, n);

    for (std::size_t i = r; i < aug.size(); ++i) {
        if (aug[i][n] != 0) return {SolveStatus::inconsistent, r, {}};
    }
    if (r < n) return {SolveStatus::rank_deficient, r, {}};

    // Full column rank: pivots sit on the diagonal of the first n rows.
    std::vector<Rational> x(n);
    for (std::size_t k = n; k-- > 0;) {
        Rational acc = Rational(aug[k][n]);
        for (std::size_t j = k + 1; j < n; ++j) acc -= Rational(aug[k][j]) * x[j];
        x[k] = acc / Rational(aug[k][k]);
    }
    return {SolveStatus::unique, r, std::move(x)};
}

}  // namespace boxzeta::exact
