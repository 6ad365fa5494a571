#include <cmath>

#include "kernels.hpp"

namespace mcabs::simd::detail {

void exp_batch_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void gaussian_pdf_batch_scalar(const double* u, double* out, std::size_t n, double inv_sigma) {
    const double scale = kInvSqrt2Pi * inv_sigma;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = u[i] * inv_sigma;
        out[i] = scale * std::exp(-0.5 * t * t);
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace mcabs::simd::detail
