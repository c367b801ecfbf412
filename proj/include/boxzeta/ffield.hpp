#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boxzeta {

// Thrown whenever p = 2 reaches an operation; every level in this project is a
// power of 2, so 2 is the single bad prime.
class BadPrimeError : public std::invalid_argument {
public:
    explicit BadPrimeError(const std::string& what) : std::invalid_argument(what) {}
};

bool is_prime(std::int64_t n);

// Throws BadPrimeError for p = 2 and std::invalid_argument for anything that
// is not an odd prime.
void require_odd_prime(std::int64_t p);

std::vector<std::uint32_t> odd_primes_up_to(std::uint32_t limit);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Legendre symbol (a|p) for an odd prime p.
int legendre(std::int64_t a, std::int64_t p);

/// Residue-field data for one odd prime: the table t -> #{b : b^2 = t} and
/// the least quadratic non-residue used to build F_{p^2}.
class PrimeContext {
public:
    explicit PrimeContext(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    std::uint32_t nonresidue() const { return nonresidue_; }

    int sqrt_count(std::uint32_t t) const { return sqrt_count_.at(t); }
    // Same table widened to int32 so the SIMD kernels can gather from it.
    const std::vector<std::int32_t>& sqrt_count_table() const { return sqrt_count_; }
    const std::vector<std::uint32_t>& squares() const { return squares_; }

    std::uint32_t reduce(std::int64_t a) const {
        auto r = a % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }

private:
    std::uint32_t p_;
    std::uint32_t nonresidue_ = 0;
    std::vector<std::int32_t> sqrt_count_;
    std::vector<std::uint32_t> squares_;  // a -> a^2 mod p
};

enum class QuadraticCharacter { chi_m4, chi_8, chi_m8 };

std::string_view to_string(QuadraticCharacter c);

// Kronecker symbols (-4|n), (8|n), (-8|n) on odd n.
int character_value(QuadraticCharacter c, std::int64_t n);

/// x0 + x1*w in F_p[w]/(w^2 - nu).
struct QuadExtElement {
    std::uint32_t x0 = 0;
    std::uint32_t x1 = 0;

    friend bool operator==(const QuadExtElement&, const QuadExtElement&) = default;
};

class QuadraticExtension {
public:
    explicit QuadraticExtension(const PrimeContext& base);

    std::uint32_t p() const { return p_; }
    std::uint32_t nonresidue() const { return nu_; }
    std::uint64_t order() const { return std::uint64_t{p_} * p_; }

    QuadExtElement add(QuadExtElement a, QuadExtElement b) const;
    QuadExtElement sub(QuadExtElement a, QuadExtElement b) const;
    QuadExtElement mul(QuadExtElement a, QuadExtElement b) const;
    QuadExtElement pow(QuadExtElement a, std::uint64_t e) const;
    // Throws std::domain_error on zero.
    QuadExtElement inverse(QuadExtElement a) const;

    bool is_nonzero_square(QuadExtElement a) const;
    // 1 + quadratic character of a (0 -> 1, nonzero square -> 2, else 0).
    int sqrt_count(QuadExtElement a) const {
        if (a == QuadExtElement{}) return 1;
        return is_nonzero_square(a) ? 2 : 0;
    }

    // Dense index x0 + p*x1, used for table lookups.
    std::uint32_t index(QuadExtElement a) const { return a.x0 + p_ * a.x1; }
    QuadExtElement element(std::uint32_t idx) const { return {idx % p_, idx / p_}; }

    // sqrt_count for every element, indexed by index(); built by Euler's criterion.
    std::vector<std::int32_t> sqrt_count_table() const;

private:
    std::uint32_t p_;
    std::uint32_t nu_;
};

}  // namespace boxzeta
