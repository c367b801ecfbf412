#include <immintrin.h>

#include "boxzeta/kernels.hpp"

namespace boxzeta::kernels::avx2 {
namespace {

// x in [0, 2p) -> x mod p. When x < p the subtraction wraps to a large
// unsigned value and the unsigned min keeps x.
inline __m256i reduce_once(__m256i x, __m256i vp) {
    return _mm256_min_epu32(x, _mm256_sub_epi32(x, vp));
}

inline std::uint32_t hsum(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi32(lo, hi);
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(1, 0, 3, 2)));
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(2, 3, 0, 1)));
    return static_cast<std::uint32_t>(_mm_cvtsi128_si32(s));
}

}  // namespace

std::uint64_t surface_cone_sum(const PrimeContext& ctx) {
    const std::uint32_t p = ctx.p();
    const std::int32_t* T = ctx.sqrt_count_table().data();
    const std::uint32_t* sq = ctx.squares().data();
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const std::uint32_t vec_end = p / 8 * 8;

    std::uint64_t total = 0;
    for (std::uint32_t a1 = 0; a1 < p; ++a1) {
        const std::uint32_t q1 = sq[a1];
        const __m256i vq1 = _mm256_set1_epi32(static_cast<int>(q1));
        for (std::uint32_t a2 = 0; a2 < p; ++a2) {
            const std::uint32_t q2 = sq[a2];
            const std::uint32_t q12 = (q1 + q2) % p;
            // s - a3^2 = a1^2 + a2^2 does not depend on a3.
            const std::int32_t t12 = T[q12];
            if (t12 == 0) continue;
            const __m256i vq2 = _mm256_set1_epi32(static_cast<int>(q2));
            const __m256i vq12 = _mm256_set1_epi32(static_cast<int>(q12));

            __m256i acc = _mm256_setzero_si256();
            for (std::uint32_t a3 = 0; a3 < vec_end; a3 += 8) {
                const __m256i q3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sq + a3));
                const __m256i s = reduce_once(_mm256_add_epi32(vq12, q3), vp);
                const __m256i s_minus_a1 = reduce_once(_mm256_add_epi32(vq2, q3), vp);
                const __m256i s_minus_a2 = reduce_once(_mm256_add_epi32(vq1, q3), vp);
                const __m256i ts = _mm256_i32gather_epi32(T, s, 4);
                const __m256i t1 = _mm256_i32gather_epi32(T, s_minus_a1, 4);
                const __m256i t2 = _mm256_i32gather_epi32(T, s_minus_a2, 4);
                acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(_mm256_mullo_epi32(ts, t1), t2));
            }
            std::uint64_t row = hsum(acc);
            for (std::uint32_t a3 = vec_end; a3 < p; ++a3) {
                const std::uint32_t q3 = sq[a3];
                row += static_cast<std::uint64_t>(T[(q12 + q3) % p] * T[(q2 + q3) % p] * T[(q1 + q3) % p]);
            }
            total += row * static_cast<std::uint64_t>(t12);
        }
    }
    return total;
}

std::uint64_t curve_cone_sum(const PrimeContext& ctx) {
    const std::uint32_t p = ctx.p();
    const std::int32_t* T = ctx.sqrt_count_table().data();
    const std::uint32_t* sq = ctx.squares().data();
    const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
    const std::uint32_t vec_end = p / 8 * 8;

    std::uint64_t total = 0;
    for (std::uint32_t x = 0; x < p; ++x) {
        const std::uint32_t two_x = 2 * x % p;
        const std::uint32_t x2 = sq[x];
        const __m256i vx2 = _mm256_set1_epi32(static_cast<int>(x2));
        // 2xy over y = 0..7, then advanced by 8 * 2x each step.
        __m256i uv = _mm256_setzero_si256();
        {
            alignas(32) std::uint32_t init[8];
            for (std::uint32_t k = 0; k < 8; ++k) init[k] = static_cast<std::uint32_t>(std::uint64_t{two_x} * k % p);
            uv = _mm256_load_si256(reinterpret_cast<const __m256i*>(init));
        }
        const __m256i step = _mm256_set1_epi32(static_cast<int>(std::uint64_t{two_x} * 8 % p));

        __m256i acc = _mm256_setzero_si256();
        for (std::uint32_t y = 0; y < vec_end; y += 8) {
            const __m256i y2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sq + y));
            const __m256i minus = reduce_once(_mm256_add_epi32(vx2, _mm256_sub_epi32(vp, y2)), vp);
            const __m256i plus = reduce_once(_mm256_add_epi32(vx2, y2), vp);
            const __m256i tu = _mm256_i32gather_epi32(T, uv, 4);
            const __m256i tv = _mm256_i32gather_epi32(T, minus, 4);
            const __m256i tw = _mm256_i32gather_epi32(T, plus, 4);
            acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(_mm256_mullo_epi32(tu, tv), tw));
            uv = reduce_once(_mm256_add_epi32(uv, step), vp);
        }
        std::uint64_t row = hsum(acc);
        for (std::uint32_t y = vec_end; y < p; ++y) {
            const auto u = static_cast<std::uint32_t>(std::uint64_t{two_x} * y % p);
            row += static_cast<std::uint64_t>(T[u] * T[(x2 + p - sq[y]) % p] * T[(x2 + sq[y]) % p]);
        }
        total += row;
    }
    return total;
}

}  // namespace boxzeta::kernels::avx2
