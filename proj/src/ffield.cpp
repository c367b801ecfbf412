#include "boxzeta/ffield.hpp"

#include <cassert>

namespace boxzeta {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

void require_odd_prime(std::int64_t p) {
    if (p == 2) throw BadPrimeError("bad prime excluded: p = 2 divides every level");
    if (!is_prime(p)) throw std::invalid_argument("not an odd prime: " + std::to_string(p));
}

std::vector<std::uint32_t> odd_primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 3) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        if (i > 2) out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    unsigned __int128 result = 1 % mod;
    unsigned __int128 b = base % mod;
    while (exp != 0) {
        if (exp & 1U) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

int legendre(std::int64_t a, std::int64_t p) {
    require_odd_prime(p);
    auto r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    auto e = mod_pow(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2),
                     static_cast<std::uint64_t>(p));
    return e == 1 ? 1 : -1;
}

PrimeContext::PrimeContext(std::uint32_t p) : p_(p) {
    require_odd_prime(p);
    sqrt_count_.assign(p, 0);
    squares_.resize(p);
    for (std::uint32_t b = 0; b < p; ++b) {
        auto sq = static_cast<std::uint32_t>(std::uint64_t{b} * b % p);
        squares_[b] = sq;
        ++sqrt_count_[sq];
    }
    for (std::uint32_t t = 2; t < p; ++t) {
        if (sqrt_count_[t] == 0) {
            nonresidue_ = t;
            break;
        }
    }
    assert(nonresidue_ != 0);
}

std::string_view to_string(QuadraticCharacter c) {
    switch (c) {
        case QuadraticCharacter::chi_m4: return "chi_m4";
        case QuadraticCharacter::chi_8: return "chi_8";
        case QuadraticCharacter::chi_m8: return "chi_m8";
    }
    return "?";
}

int character_value(QuadraticCharacter c, std::int64_t n) {
    if (n % 2 == 0) throw std::invalid_argument("character_value: even argument " + std::to_string(n));
    auto r = static_cast<int>(((n % 8) + 8) % 8);
    switch (c) {
        case QuadraticCharacter::chi_m4: return r % 4 == 1 ? 1 : -1;
        case QuadraticCharacter::chi_8: return (r == 1 || r == 7) ? 1 : -1;
        case QuadraticCharacter::chi_m8: return (r == 1 || r == 3) ? 1 : -1;
    }
    return 0;
}

QuadraticExtension::QuadraticExtension(const PrimeContext& base)
    : p_(base.p()), nu_(base.nonresidue()) {
    // Keeps every p^4-sized accumulator well inside 64 bits.
    if (p_ > 1000) throw std::invalid_argument("extension-field arithmetic limited to p <= 1000");
}

QuadExtElement QuadraticExtension::add(QuadExtElement a, QuadExtElement b) const {
    return {(a.x0 + b.x0) % p_, (a.x1 + b.x1) % p_};
}

QuadExtElement QuadraticExtension::sub(QuadExtElement a, QuadExtElement b) const {
    return {(a.x0 + p_ - b.x0) % p_, (a.x1 + p_ - b.x1) % p_};
}

QuadExtElement QuadraticExtension::mul(QuadExtElement a, QuadExtElement b) const {
    const std::uint64_t p = p_;
    std::uint64_t re = (std::uint64_t{a.x0} * b.x0 + std::uint64_t{a.x1} * b.x1 % p * nu_) % p;
    std::uint64_t im = (std::uint64_t{a.x0} * b.x1 + std::uint64_t{a.x1} * b.x0) % p;
    return {static_cast<std::uint32_t>(re), static_cast<std::uint32_t>(im)};
}

QuadExtElement QuadraticExtension::pow(QuadExtElement a, std::uint64_t e) const {
    QuadExtElement result{1 % p_, 0};
    while (e != 0) {
        if (e & 1U) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

QuadExtElement QuadraticExtension::inverse(QuadExtElement a) const {
    if (a == QuadExtElement{}) throw std::domain_error("inverse of zero in F_{p^2}");
    // (x0 + x1 w)^{-1} = (x0 - x1 w) / (x0^2 - nu x1^2)
    const std::uint64_t p = p_;
    std::uint64_t norm = (std::uint64_t{a.x0} * a.x0 + p * p - std::uint64_t{a.x1} * a.x1 % p * nu_) % p;
    auto inv_norm = static_cast<std::uint32_t>(mod_pow(norm, p - 2, p));
    QuadExtElement conj{a.x0, (p_ - a.x1) % p_};
    return mul(conj, {inv_norm, 0});
}

bool QuadraticExtension::is_nonzero_square(QuadExtElement a) const {
    if (a == QuadExtElement{}) return false;
    auto r = pow(a, (order() - 1) / 2);
    return r == QuadExtElement{1, 0};
}

std::vector<std::int32_t> QuadraticExtension::sqrt_count_table() const {
    std::vector<std::int32_t> table(order());
    for (std::uint32_t idx = 0; idx < table.size(); ++idx) {
        table[idx] = sqrt_count(element(idx));
    }
    return table;
}

}  // namespace boxzeta
