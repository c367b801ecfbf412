#include "boxzeta/cmforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include "boxzeta/counting.hpp"

namespace boxzeta {
namespace {

std::int64_t isqrt_exact(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

// Prime coefficient as a Gaussian integer; only g64_pair can be non-real.
GaussianInt prime_coefficient(FormId form, std::uint32_t p, const Conventions& conv) {
    if (form == FormId::g64_pair) return extract_g_pair(p).first();
    return {ap(form, p, conv), 0};
}

class GPairMemo {
public:
    std::optional<CoeffPair> find(std::uint32_t p) const {
        std::shared_lock lock(mutex_);
        auto it = table_.find(p);
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }
    // Values are deterministic, so racing writers store the same pair.
    void store(std::uint32_t p, CoeffPair pair) {
        std::unique_lock lock(mutex_);
        table_.emplace(p, pair);
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::uint32_t, CoeffPair> table_;
};

GPairMemo& g_pair_memo() {
    static GPairMemo memo;
    return memo;
}

}  // namespace

FormInfo form_info(FormId f) {
    switch (f) {
        case FormId::f32:
        case FormId::f64: return {2, std::nullopt, CmField::q_i};
        case FormId::g64_pair: return {2, QuadraticCharacter::chi_8, CmField::q_sqrt_m2};
        case FormId::h16: return {3, QuadraticCharacter::chi_m4, CmField::q_i};
        case FormId::h8:
        case FormId::h32: return {3, QuadraticCharacter::chi_m8, CmField::q_sqrt_m2};
    }
    throw std::logic_error("unknown form");
}

std::string_view to_string(FormId f) {
    switch (f) {
        case FormId::f32: return "f32";
        case FormId::f64: return "f64";
        case FormId::g64_pair: return "g64";
        case FormId::h8: return "h8";
        case FormId::h16: return "h16";
        case FormId::h32: return "h32";
    }
    return "?";
}

std::optional<FormId> parse_form(std::string_view name) {
    for (FormId f : {FormId::f32, FormId::f64, FormId::g64_pair, FormId::h8, FormId::h16, FormId::h32}) {
        if (name == to_string(f)) return f;
    }
    if (name == "g64_pair" || name == "g") return FormId::g64_pair;
    return std::nullopt;
}

int nebentypus_value(FormId f, std::int64_t n) {
    auto chi = form_info(f).nebentypus;
    return chi ? character_value(*chi, n) : 1;
}

std::string to_string(GaussianInt z) {
    std::ostringstream out;
    if (z.im == 0) {
        out << z.re;
    } else if (z.re == 0) {
        out << z.im << "i";
    } else {
        out << z.re << (z.im < 0 ? "-" : "+") << std::llabs(z.im) << "i";
    }
    return out.str();
}

std::string to_string(const CoeffPair& pair) {
    return "{" + to_string(pair.first()) + ", " + to_string(pair.second()) + "}";
}

std::string_view to_string(H16InertConvention c) { return c == H16InertConvention::zero ? "zero" : "minus2p"; }

std::optional<H16InertConvention> parse_h16_inert(std::string_view name) {
    if (name == "zero") return H16InertConvention::zero;
    if (name == "minus2p") return H16InertConvention::minus_2p;
    return std::nullopt;
}

TwoSquares two_squares_normalized(std::uint32_t p) {
    require_odd_prime(p);
    if (p % 4 != 1) throw std::invalid_argument("two_squares_normalized: p must be 1 mod 4, got " + std::to_string(p));
    for (std::int64_t b = 0; b * b <= p; b += 2) {
        auto a = isqrt_exact(static_cast<std::int64_t>(p) - b * b);
        if (a <= 0 || a % 2 == 0) continue;
        // b is even, so a + b = 1 (mod 4) fixes the sign of a regardless of the sign of b.
        const std::int64_t target = ((1 - b) % 4 + 4) % 4;
        const std::int64_t signed_a = (a % 4 == target) ? a : -a;
        return {signed_a, b};
    }
    throw std::logic_error("no two-squares decomposition for " + std::to_string(p));
}

SquarePlusTwoSquares a2b2_decomp(std::uint32_t p) {
    require_odd_prime(p);
    if (p % 8 != 1 && p % 8 != 3) {
        throw std::invalid_argument("a2b2_decomp: p inert in Q(sqrt -2), got " + std::to_string(p));
    }
    for (std::int64_t b = 1; 2 * b * b <= p; ++b) {
        auto a = isqrt_exact(static_cast<std::int64_t>(p) - 2 * b * b);
        if (a > 0) return {a, b};
    }
    throw std::logic_error("no a^2 + 2b^2 decomposition for " + std::to_string(p));
}

std::int64_t ap(FormId form, std::uint32_t p, const Conventions& conv) {
    require_odd_prime(p);
    const std::int64_t pp = p;
    switch (form) {
        case FormId::f32:
            if (p % 4 == 3) return 0;
            return 2 * two_squares_normalized(p).a;
        case FormId::f64: return character_value(QuadraticCharacter::chi_8, pp) * ap(FormId::f32, p, conv);
        case FormId::h16: {
            if (p % 4 == 3) return conv.h16_inert == H16InertConvention::zero ? 0 : -2 * pp;
            auto [a, b] = two_squares_normalized(p);
            return 2 * (a * a - b * b);
        }
        case FormId::h8: {
            if (p % 8 == 5 || p % 8 == 7) return 0;
            auto [a, b] = a2b2_decomp(p);
            return 2 * (a * a - 2 * b * b);
        }
        case FormId::h32: return character_value(QuadraticCharacter::chi_8, pp) * ap(FormId::h8, p, conv);
        case FormId::g64_pair: break;
    }
    throw std::invalid_argument("ap: g64 has no single integer coefficient; use extract_g_pair");
}

std::int64_t ap_oracle_elliptic(FormId form, std::uint32_t p) {
    require_odd_prime(p);
    if (form == FormId::f32) return count_elliptic(VarietyId::e32, p);
    if (form == FormId::f64) return count_elliptic(VarietyId::e64, p);
    throw std::invalid_argument("ap_oracle_elliptic: only f32 and f64 have elliptic-curve oracles");
}

CoeffPair extract_g_pair_from_counts(std::uint32_t p, std::int64_t count_x_fp, std::int64_t count_x_fp2) {
    require_odd_prime(p);
    const std::int64_t pp = p;
    const std::int64_t s1 = pp + 1 - count_x_fp;
    const std::int64_t s2 = pp * pp + 1 - count_x_fp2;
    const std::int64_t f32 = ap(FormId::f32, p);
    const std::int64_t f64 = ap(FormId::f64, p);
    const std::int64_t chi = character_value(QuadraticCharacter::chi_8, pp);

    // H^1(X) = 2 f32 + f64 + g+ + g-. Second power sums of Frobenius
    // eigenvalues are a^2 - 2 eps(p) p for each form.
    const std::int64_t sum = s1 - 2 * f32 - f64;
    const std::int64_t sum_sq = s2 - 2 * (f32 * f32 - 2 * pp) - (f64 * f64 - 2 * pp) + 4 * chi * pp;

    auto fail = [&](const std::string& why) {
        std::ostringstream msg;
        msg << "extract_g_pair(" << p << "): " << why << " (s1=" << s1 << ", s2=" << s2 << ")";
        throw std::logic_error(msg.str());
    };
    if ((sum * sum - sum_sq) % 2 != 0) fail("odd elementary symmetric product");
    const std::int64_t prod = (sum * sum - sum_sq) / 2;
    const std::int64_t disc = sum * sum - 4 * prod;

    if (disc >= 0) {
        auto r = isqrt_exact(disc);
        if (r < 0 || (sum + r) % 2 != 0) fail("roots not integral");
        if (r != 0) fail("distinct real roots are not a conjugate pair");
        return CoeffPair::real(sum / 2);
    }
    auto r = isqrt_exact(-disc);
    if (r < 0 || sum % 2 != 0 || r % 2 != 0) fail("roots not Gaussian integers");
    return CoeffPair(GaussianInt{sum / 2, r / 2});
}

CoeffPair extract_g_pair(std::uint32_t p) {
    require_odd_prime(p);
    if (p > 200) throw std::invalid_argument("extract_g_pair: p <= 200 required");
    if (auto hit = g_pair_memo().find(p)) return *hit;
    auto pair = extract_g_pair_from_counts(p, count_curve_x(p, 1).count, count_curve_x(p, 2).count);
    g_pair_memo().store(p, pair);
    return pair;
}

std::vector<QCoefficient> qexp(FormId form, std::uint32_t limit, const Conventions& conv) {
    if (limit < 1) throw std::invalid_argument("qexp: limit must be >= 1");
    if (form == FormId::g64_pair && limit > 200) throw std::invalid_argument("qexp: g64 limited to N <= 200");

    const FormInfo info = form_info(form);
    std::vector<std::uint32_t> spf(limit + 1, 0);  // smallest prime factor
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint32_t j = i; j <= limit; j += i) {
            if (spf[j] == 0) spf[j] = i;
        }
    }

    // a_{p^k} via a_{p^{k+1}} = a_p a_{p^k} - eps(p) p^{w-1} a_{p^{k-1}}.
    std::map<std::uint32_t, std::vector<GaussianInt>> prime_powers;
    auto power_coeff = [&](std::uint32_t p, std::uint32_t k) {
        auto& seq = prime_powers[p];
        if (seq.empty()) {
            seq.push_back({1, 0});
            seq.push_back(prime_coefficient(form, p, conv));
        }
        std::int64_t scale = nebentypus_value(form, p);
        for (int w = 1; w < info.weight; ++w) scale *= p;
        while (seq.size() <= k) {
            auto n = seq.size();
            seq.push_back(seq[1] * seq[n - 1] - GaussianInt{scale, 0} * seq[n - 2]);
        }
        return seq[k];
    };

    std::vector<QCoefficient> out(limit + 1);
    for (std::uint32_t n = 1; n <= limit; ++n) {
        if (n % 2 == 0) continue;  // excluded: 2 is the bad prime
        GaussianInt value{1, 0};
        int imaginary_factors = 0;
        std::uint32_t rest = n;
        while (rest > 1) {
            const std::uint32_t p = spf[rest];
            std::uint32_t k = 0;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            const GaussianInt factor = power_coeff(p, k);
            if (!factor.is_real()) ++imaginary_factors;
            value = value * factor;
        }
        QCoefficient c;
        if (value == GaussianInt{}) {
            c = {QStatus::value, CoeffPair::real(0)};
        } else if (imaginary_factors >= 2) {
            // Product depends on the relative signs of the imaginary factors.
            c = {QStatus::undetermined, CoeffPair{}};
        } else {
            c = {QStatus::value, CoeffPair(value)};
        }
        out[n] = c;
    }
    return out;
}

QCoefficient coefficient(FormId form, std::uint32_t n, const Conventions& conv) {
    if (n == 0) throw std::invalid_argument("coefficient: n must be >= 1");
    if (n % 2 == 0) throw BadPrimeError("bad prime excluded: even-index coefficients are not computed");
    return qexp(form, n, conv)[n];
}

std::vector<std::int64_t> eta_oracle_h16(std::uint32_t limit) {
    if (limit > 100000) throw std::invalid_argument("eta_oracle_h16: limit <= 1e5");
    // prod (1 - x^n)^6 in x = q^4 up to x^m, then shift by q.
    const std::uint32_t m = limit >= 1 ? (limit - 1) / 4 : 0;
    // Intermediate partial products have huge coefficients; the final series
    // does not, so working in Z/2^64 and reading the result as signed is exact.
    std::vector<std::uint64_t> series(m + 1, 0);
    series[0] = 1;
    for (std::uint32_t n = 1; n <= m; ++n) {
        for (int rep = 0; rep < 6; ++rep) {
            for (std::uint32_t k = m; k >= n; --k) series[k] -= series[k - n];
        }
    }
    std::vector<std::int64_t> out(limit + 1, 0);
    for (std::uint32_t k = 0; k <= m; ++k) {
        const std::uint64_t exponent = 4ULL * k + 1;
        if (exponent <= limit) out[exponent] = static_cast<std::int64_t>(series[k]);
    }
    return out;
}

}  // namespace boxzeta
