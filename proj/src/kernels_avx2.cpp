// AVX2 variants of the hot loops. Compiled with -mavx2 only; selection happens
// at runtime in kernels.cpp. mc_log_l and add_periodic reproduce the scalar
// reference bit for bit (same per-element order); char_over_n uses four lane
// accumulators and is equivalence-tested against the reference to 1e-12.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

#include "lchi/kahan.hpp"
#include "lchi/kernels.hpp"
#include "lchi/philox.hpp"

namespace lchi {
namespace kernels_avx2 {

void add_periodic(double* acc, std::size_t n, const double* tbl,
                  std::size_t period, std::size_t r0) {
    std::size_t i = 0;
    std::size_t r = r0;
    while (i < n) {
        std::size_t m = n - i;
        if (m > period - r) m = period - r;
        const double* src = tbl + r;
        double* dst = acc + i;
        std::size_t j = 0;
        for (; j + 8 <= m; j += 8) {
            __m256d a0 = _mm256_loadu_pd(dst + j);
            __m256d a1 = _mm256_loadu_pd(dst + j + 4);
            a0 = _mm256_add_pd(a0, _mm256_loadu_pd(src + j));
            a1 = _mm256_add_pd(a1, _mm256_loadu_pd(src + j + 4));
            _mm256_storeu_pd(dst + j, a0);
            _mm256_storeu_pd(dst + j + 4, a1);
        }
        for (; j < m; ++j) dst[j] += src[j];
        i += m;
        r = 0;
    }
}

double char_over_n(const double* tbl, std::size_t period, std::size_t r0,
                   std::uint64_t n0, std::uint64_t n1) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d four = _mm256_set1_pd(4.0);
    KahanSum extra;
    std::uint64_t n = n0;
    std::size_t r = r0;
    while (n < n1) {
        std::uint64_t m = n1 - n;
        if (m > period - r) m = period - r;
        const double* src = tbl + r;
        std::uint64_t j = 0;
        if (m >= 4) {
            __m256d vn = _mm256_setr_pd(static_cast<double>(n), static_cast<double>(n + 1),
                                        static_cast<double>(n + 2), static_cast<double>(n + 3));
            for (; j + 4 <= m; j += 4) {
                __m256d t = _mm256_loadu_pd(src + j);
                acc = _mm256_add_pd(acc, _mm256_div_pd(t, vn));
                vn = _mm256_add_pd(vn, four);
            }
        }
        for (; j < m; ++j) extra.add(src[j] / static_cast<double>(n + j));
        n += m;
        r = 0;
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + extra.value();
}

namespace {

inline void mulhilo8(__m256i x, __m256i mul, __m256i& lo, __m256i& hi) {
    __m256i even = _mm256_mul_epu32(x, mul);
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), mul);
    lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

// Accumulate the contribution of one prime (index j) for 8 samples whose
// uniforms sit in `u`. acc_lo covers samples 0-3, acc_hi samples 4-7.
inline void select_add(__m256i u, const SamplerTables& st, std::size_t j,
                       __m256d& acc_lo, __m256d& acc_hi) {
    const __m256i bias = _mm256_set1_epi32(static_cast<int>(0x80000000u));
    __m256i us = _mm256_xor_si256(u, bias);
    __m256i zb = _mm256_xor_si256(_mm256_set1_epi32(static_cast<int>(st.zero_below[j])), bias);
    __m256i pb = _mm256_xor_si256(_mm256_set1_epi32(static_cast<int>(st.plus_below[j])), bias);
    __m256i m_zero = _mm256_cmpgt_epi32(zb, us);   // u < zero_below
    __m256i m_plus = _mm256_cmpgt_epi32(pb, us);   // u < plus_below
    const __m256d vplus = _mm256_set1_pd(st.add_plus[j]);
    const __m256d vminus = _mm256_set1_pd(st.add_minus[j]);

    __m128i z128 = _mm256_castsi256_si128(m_zero);
    __m128i p128 = _mm256_castsi256_si128(m_plus);
    __m256d zlo = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(z128));
    __m256d plo = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(p128));
    __m256d contrib = _mm256_andnot_pd(zlo, _mm256_blendv_pd(vminus, vplus, plo));
    acc_lo = _mm256_add_pd(acc_lo, contrib);

    z128 = _mm256_extracti128_si256(m_zero, 1);
    p128 = _mm256_extracti128_si256(m_plus, 1);
    __m256d zhi = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(z128));
    __m256d phi = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(p128));
    contrib = _mm256_andnot_pd(zhi, _mm256_blendv_pd(vminus, vplus, phi));
    acc_hi = _mm256_add_pd(acc_hi, contrib);
}

}  // namespace

void mc_log_l(std::uint64_t seed, std::uint64_t sample0, std::size_t count,
              const SamplerTables& st, double* out) {
    // Round keys are sample-independent; hoist them out of the loop.
    std::uint32_t rk0[philox::kRounds], rk1[philox::kRounds];
    {
        std::uint32_t k0 = static_cast<std::uint32_t>(seed);
        std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
        for (int r = 0; r < philox::kRounds; ++r) {
            rk0[r] = k0;
            rk1[r] = k1;
            k0 += philox::kWeyl0;
            k1 += philox::kWeyl1;
        }
    }
    const __m256i mul0 = _mm256_set1_epi32(static_cast<int>(philox::kMul0));
    const __m256i mul1 = _mm256_set1_epi32(static_cast<int>(philox::kMul1));
    const std::size_t quads = st.zero_below.size() / 4;

    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        alignas(32) std::uint32_t w0[8], w1[8];
        for (int t = 0; t < 8; ++t) {
            std::uint64_t s = sample0 + i + t;
            w0[t] = static_cast<std::uint32_t>(s);
            w1[t] = static_cast<std::uint32_t>(s >> 32);
        }
        const __m256i c0init = _mm256_load_si256(reinterpret_cast<const __m256i*>(w0));
        const __m256i c1init = _mm256_load_si256(reinterpret_cast<const __m256i*>(w1));
        __m256d acc_lo = _mm256_setzero_pd();
        __m256d acc_hi = _mm256_setzero_pd();
        for (std::size_t q = 0; q < quads; ++q) {
            __m256i x0 = c0init;
            __m256i x1 = c1init;
            __m256i x2 = _mm256_set1_epi32(static_cast<int>(q));
            __m256i x3 = _mm256_setzero_si256();
            for (int r = 0; r < philox::kRounds; ++r) {
                __m256i lo0, hi0, lo1, hi1;
                mulhilo8(x0, mul0, lo0, hi0);
                mulhilo8(x2, mul1, lo1, hi1);
                __m256i k0v = _mm256_set1_epi32(static_cast<int>(rk0[r]));
                __m256i k1v = _mm256_set1_epi32(static_cast<int>(rk1[r]));
                x0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0v);
                x1 = lo1;
                x2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1v);
                x3 = lo0;
            }
            std::size_t j = 4 * q;
            select_add(x0, st, j + 0, acc_lo, acc_hi);
            select_add(x1, st, j + 1, acc_lo, acc_hi);
            select_add(x2, st, j + 2, acc_lo, acc_hi);
            select_add(x3, st, j + 3, acc_lo, acc_hi);
        }
        _mm256_storeu_pd(out + i, acc_lo);
        _mm256_storeu_pd(out + i + 4, acc_hi);
    }
    if (i < count) {
        // tail samples take the reference path; same per-sample values
        scalar_kernels().mc_log_l(seed, sample0 + i, count - i, st, out + i);
    }
}

}  // namespace kernels_avx2

const Kernels* avx2_kernels_impl() {
    static const Kernels k{"avx2", kernels_avx2::add_periodic,
                           kernels_avx2::char_over_n, kernels_avx2::mc_log_l};
    return &k;
}

}  // namespace lchi

#endif  // x86_64
