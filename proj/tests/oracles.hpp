#pragma once

// Small, deliberately naive reference implementations used only by the tests.
// Nothing here shares code with the library.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline bool prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

// Legendre symbol by listing squares.
inline int legendre(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    if (a == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

// a_p of y^2 = x^3 + k x by summing Legendre symbols.
inline std::int64_t elliptic_ap(std::int64_t k, std::int64_t p) {
    std::int64_t s = 0;
    for (std::int64_t x = 0; x < p; ++x) s += legendre(x * x % p * x + k * x, p);
    return -s;
}

// a_p(f32): search p = a^2 + b^2 with a odd, a + b = 1 (mod 4).
inline std::int64_t f32_ap(std::int64_t p) {
    if (p % 4 == 3) return 0;
    for (std::int64_t a = -p; a <= p; ++a) {
        if (a % 2 == 0 || a * a > p) continue;
        for (std::int64_t b = 0; b * b <= p; b += 2) {
            if (a * a + b * b != p) continue;
            if (mod(a + b, 4) == 1 || mod(a - b, 4) == 1) return 2 * a;
        }
    }
    return 999999;
}

// Frozen from an independent Python enumeration: #S-bar(F_p).
inline const std::map<std::uint32_t, std::int64_t>& surface_counts() {
    static const std::map<std::uint32_t, std::int64_t> t{
        {3, 24},     {5, 48},     {7, 120},    {11, 216},   {13, 304},   {17, 480},  {19, 408},  {23, 760},
        {29, 1200},  {31, 1272},  {37, 1456},  {41, 2208},  {43, 2136},  {47, 2680}, {53, 3504}, {59, 3672},
        {61, 4144},  {67, 5016},  {71, 5752},  {73, 5600},  {79, 7032},  {83, 7704}, {89, 9696}, {97, 10976}};
    return t;
}

// Frozen #X(F_p) and #X(F_{p^2}) from the same Python run.
inline const std::map<std::uint32_t, std::int64_t>& curve_counts_deg1() {
    static const std::map<std::uint32_t, std::int64_t> t{
        {3, 4},   {5, 8},   {7, 8},   {11, 12}, {13, 8},  {17, 24}, {19, 20},
        {23, 24}, {29, 40}, {31, 32}, {37, 40}, {41, 24}, {43, 44}, {47, 48}};
    return t;
}
inline const std::map<std::uint32_t, std::int64_t>& curve_counts_deg2() {
    static const std::map<std::uint32_t, std::int64_t> t{{3, 24}, {5, 24}, {7, 120}, {11, 216}, {13, 88}};
    return t;
}

}  // namespace oracle
