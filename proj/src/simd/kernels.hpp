#ifndef MCABS_SIMD_KERNELS_HPP
#define MCABS_SIMD_KERNELS_HPP

#include <cstddef>

// Per-ISA kernel implementations behind the dispatch table in dispatch.cpp.
namespace mcabs::simd::detail {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

void exp_batch_scalar(const double* x, double* out, std::size_t n);
void gaussian_pdf_batch_scalar(const double* u, double* out, std::size_t n, double inv_sigma);
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define MCABS_HAVE_AVX2_BUILD 1
void exp_batch_avx2(const double* x, double* out, std::size_t n);
void gaussian_pdf_batch_avx2(const double* u, double* out, std::size_t n, double inv_sigma);
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
#endif

#if defined(__aarch64__)
#define MCABS_HAVE_NEON_BUILD 1
void exp_batch_neon(const double* x, double* out, std::size_t n);
void gaussian_pdf_batch_neon(const double* u, double* out, std::size_t n, double inv_sigma);
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double a, const double* x, double* y, std::size_t n);
#endif

}  // namespace mcabs::simd::detail

#endif
