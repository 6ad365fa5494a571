#include "kernels.hpp"

#if defined(MCABS_HAVE_AVX2_BUILD)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace mcabs::simd::detail {
namespace {

// exp of 4 doubles: x = n*ln2 + r with |r| <= ln2/2, degree-12 Taylor for
// e^r, then scaling by 2^n applied in two halves so the exponent bits never
// leave the normal range.
inline __m256d exp4(__m256d x) {
    const __m256d clamp_lo = _mm256_set1_pd(-746.0);
    const __m256d clamp_hi = _mm256_set1_pd(710.0);
    const __m256d underflow = _mm256_set1_pd(-745.133219101941108420);
    const __m256d overflow = _mm256_set1_pd(709.782712893383996843);

    const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, clamp_lo), clamp_hi);

    const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, xc);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    __m256d p = _mm256_set1_pd(2.08767569878680989792e-09);  // 1/12!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.50521083854417187751e-08));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.75573192239858906526e-07));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.75573192239858906526e-06));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.48015873015873015873e-05));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.98412698412698412698e-04));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.38888888888888888889e-03));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.33333333333333333333e-03));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.16666666666666666667e-02));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.66666666666666666667e-01));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(5.0e-01));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^n = 2^n1 * 2^n2 with n1 = floor(n/2), n2 = n - n1
    const __m256d half_n = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)),
                                           _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
    const __m256d rest = _mm256_sub_pd(n, half_n);
    const __m256i bias = _mm256_set1_epi64x(1023);
    const __m256i e1 = _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(half_n)), bias);
    const __m256i e2 = _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(rest)), bias);
    const __m256d pow1 = _mm256_castsi256_pd(_mm256_slli_epi64(e1, 52));
    const __m256d pow2 = _mm256_castsi256_pd(_mm256_slli_epi64(e2, 52));

    __m256d res = _mm256_mul_pd(_mm256_mul_pd(p, pow1), pow2);

    const __m256d zero_mask = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
    const __m256d inf_mask = _mm256_cmp_pd(x, overflow, _CMP_GT_OQ);
    res = _mm256_blendv_pd(res, _mm256_setzero_pd(), zero_mask);
    res = _mm256_blendv_pd(res, _mm256_set1_pd(std::numeric_limits<double>::infinity()), inf_mask);
    return res;
}

}  // namespace

void exp_batch_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void gaussian_pdf_batch_avx2(const double* u, double* out, std::size_t n, double inv_sigma) {
    const __m256d is = _mm256_set1_pd(inv_sigma);
    const __m256d neg_half = _mm256_set1_pd(-0.5);
    const __m256d scale = _mm256_set1_pd(kInvSqrt2Pi * inv_sigma);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(u + i), is);
        const __m256d x = _mm256_mul_pd(neg_half, _mm256_mul_pd(t, t));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(scale, exp4(x)));
    }
    const double sscale = kInvSqrt2Pi * inv_sigma;
    for (; i < n; ++i) {
        const double t = u[i] * inv_sigma;
        out[i] = sscale * std::exp(-0.5 * t * t);
    }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yi));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace mcabs::simd::detail

#endif  // MCABS_HAVE_AVX2_BUILD
