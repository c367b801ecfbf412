#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boxzeta/ffield.hpp"

namespace boxzeta {

// Newforms with CM attached to the cuboid surface and to the curve X.
//   f32, f64  weight 2, trivial character, CM by Q(i)
//   g64_pair  weight 2, character chi_8, CM by Q(sqrt -2); only the Galois pair
//   h16       weight 3, character chi_m4, CM by Q(i)
//   h8, h32   weight 3, character chi_m8, CM by Q(sqrt -2)
enum class FormId { f32, f64, g64_pair, h8, h16, h32 };

enum class CmField { q_i, q_sqrt_m2 };

struct FormInfo {
    int weight;
    std::optional<QuadraticCharacter> nebentypus;  // nullopt = trivial
    CmField cm_field;
};

FormInfo form_info(FormId f);
std::string_view to_string(FormId f);
std::optional<FormId> parse_form(std::string_view name);

// Value of the nebentypus at odd n.
int nebentypus_value(FormId f, std::int64_t n);

struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    GaussianInt conj() const { return {re, -im}; }
    std::int64_t norm() const { return re * re + im * im; }
    bool is_real() const { return im == 0; }

    friend GaussianInt operator+(GaussianInt a, GaussianInt b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussianInt operator-(GaussianInt a, GaussianInt b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

std::string to_string(GaussianInt z);

/// Unordered pair {z, conj(z)}. Stored with im >= 0 in the first slot.
class CoeffPair {
public:
    CoeffPair() = default;
    explicit CoeffPair(GaussianInt z) : first_(z.im < 0 ? z.conj() : z) {}
    static CoeffPair real(std::int64_t v) { return CoeffPair(GaussianInt{v, 0}); }

    GaussianInt first() const { return first_; }
    GaussianInt second() const { return first_.conj(); }
    GaussianInt sum() const { return first_ + second(); }
    GaussianInt product() const { return first_ * second(); }
    bool collapsed() const { return first_.im == 0; }

    friend bool operator==(const CoeffPair&, const CoeffPair&) = default;

private:
    GaussianInt first_{};
};

std::string to_string(const CoeffPair& pair);

// p = a^2 + b^2, a odd with a + b = 1 (mod 4); b even and reported as |b|.
struct TwoSquares {
    std::int64_t a;
    std::int64_t b_abs;
};
TwoSquares two_squares_normalized(std::uint32_t p);

// p = a^2 + 2 b^2, both reported as absolute values.
struct SquarePlusTwoSquares {
    std::int64_t a_abs;
    std::int64_t b_abs;
};
SquarePlusTwoSquares a2b2_decomp(std::uint32_t p);

// a_p(h16) at p = 3 (mod 4): zero is the standard CM value; minus_2p is the
// trace of the rank-two Tate part read literally from V_f^{(x)2} = h16 + Q(-1)^2.
enum class H16InertConvention { zero, minus_2p };

std::string_view to_string(H16InertConvention c);
std::optional<H16InertConvention> parse_h16_inert(std::string_view name);

struct Conventions {
    H16InertConvention h16_inert = H16InertConvention::zero;
    friend bool operator==(const Conventions&, const Conventions&) = default;
};

// Integer a_p for every form except g64_pair. Throws BadPrimeError for p = 2.
std::int64_t ap(FormId form, std::uint32_t p, const Conventions& conv = {});

// f32/f64 coefficients recomputed from point counts on y^2 = x^3 -+ x.
std::int64_t ap_oracle_elliptic(FormId form, std::uint32_t p);

// Pair {a_p(g64,+), a_p(g64,-)} from #X(F_p) and #X(F_{p^2}). Throws
// std::logic_error if the recovered roots are not a conjugate pair of Gaussian
// integers. Memoized per prime; safe to call concurrently.
CoeffPair extract_g_pair(std::uint32_t p);
CoeffPair extract_g_pair_from_counts(std::uint32_t p, std::int64_t count_x_fp, std::int64_t count_x_fp2);

enum class QStatus { value, excluded, undetermined };

struct QCoefficient {
    QStatus status = QStatus::excluded;
    CoeffPair pair;  // {a, a} for forms with integer coefficients

    std::optional<std::int64_t> integer() const {
        if (status != QStatus::value || !pair.collapsed()) return std::nullopt;
        return pair.first().re;
    }
};

// Coefficients a_1..a_N (index 0 unused). Even n are reported as excluded.
// For g64_pair, a_n is undetermined when it depends on the relative signs of
// two or more imaginary prime coefficients.
std::vector<QCoefficient> qexp(FormId form, std::uint32_t limit, const Conventions& conv = {});

// Single coefficient a_n; even n is refused with BadPrimeError.
QCoefficient coefficient(FormId form, std::uint32_t n, const Conventions& conv = {});

// Coefficients of q * prod_{n>=1} (1 - q^{4n})^6 for q^0..q^N.
std::vector<std::int64_t> eta_oracle_h16(std::uint32_t limit);

}  // namespace boxzeta
