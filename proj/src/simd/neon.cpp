#include "kernels.hpp"

#if defined(MCABS_HAVE_NEON_BUILD)

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace mcabs::simd::detail {
namespace {

// Same reduction and polynomial as the AVX2 variant, two lanes at a time.
inline float64x2_t exp2lanes(float64x2_t x) {
    const float64x2_t xc = vminq_f64(vmaxq_f64(x, vdupq_n_f64(-746.0)), vdupq_n_f64(710.0));

    const float64x2_t log2e = vdupq_n_f64(1.44269504088896340736);
    const float64x2_t n = vrndnq_f64(vmulq_f64(xc, log2e));
    float64x2_t r = vfmsq_f64(xc, n, vdupq_n_f64(6.93147180369123816490e-01));
    r = vfmsq_f64(r, n, vdupq_n_f64(1.90821492927058770002e-10));

    float64x2_t p = vdupq_n_f64(2.08767569878680989792e-09);
    p = vfmaq_f64(vdupq_n_f64(2.50521083854417187751e-08), p, r);
    p = vfmaq_f64(vdupq_n_f64(2.75573192239858906526e-07), p, r);
    p = vfmaq_f64(vdupq_n_f64(2.75573192239858906526e-06), p, r);
    p = vfmaq_f64(vdupq_n_f64(2.48015873015873015873e-05), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.98412698412698412698e-04), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.38888888888888888889e-03), p, r);
    p = vfmaq_f64(vdupq_n_f64(8.33333333333333333333e-03), p, r);
    p = vfmaq_f64(vdupq_n_f64(4.16666666666666666667e-02), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.66666666666666666667e-01), p, r);
    p = vfmaq_f64(vdupq_n_f64(5.0e-01), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0), p, r);
    p = vfmaq_f64(vdupq_n_f64(1.0), p, r);

    const float64x2_t half_n = vrndmq_f64(vmulq_f64(n, vdupq_n_f64(0.5)));
    const float64x2_t rest = vsubq_f64(n, half_n);
    const int64x2_t bias = vdupq_n_s64(1023);
    const int64x2_t e1 = vaddq_s64(vcvtq_s64_f64(half_n), bias);
    const int64x2_t e2 = vaddq_s64(vcvtq_s64_f64(rest), bias);
    const float64x2_t pow1 = vreinterpretq_f64_s64(vshlq_n_s64(e1, 52));
    const float64x2_t pow2 = vreinterpretq_f64_s64(vshlq_n_s64(e2, 52));

    float64x2_t res = vmulq_f64(vmulq_f64(p, pow1), pow2);

    const uint64x2_t zero_mask = vcltq_f64(x, vdupq_n_f64(-745.133219101941108420));
    const uint64x2_t inf_mask = vcgtq_f64(x, vdupq_n_f64(709.782712893383996843));
    res = vbslq_f64(zero_mask, vdupq_n_f64(0.0), res);
    res = vbslq_f64(inf_mask, vdupq_n_f64(std::numeric_limits<double>::infinity()), res);
    return res;
}

}  // namespace

void exp_batch_neon(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, exp2lanes(vld1q_f64(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void gaussian_pdf_batch_neon(const double* u, double* out, std::size_t n, double inv_sigma) {
    const float64x2_t is = vdupq_n_f64(inv_sigma);
    const float64x2_t neg_half = vdupq_n_f64(-0.5);
    const float64x2_t scale = vdupq_n_f64(kInvSqrt2Pi * inv_sigma);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t t = vmulq_f64(vld1q_f64(u + i), is);
        const float64x2_t x = vmulq_f64(neg_half, vmulq_f64(t, t));
        vst1q_f64(out + i, vmulq_f64(scale, exp2lanes(x)));
    }
    const double sscale = kInvSqrt2Pi * inv_sigma;
    for (; i < n; ++i) {
        const double t = u[i] * inv_sigma;
        out[i] = sscale * std::exp(-0.5 * t * t);
    }
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    for (; i + 2 <= n; i += 2) acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace mcabs::simd::detail

#endif  // MCABS_HAVE_NEON_BUILD
