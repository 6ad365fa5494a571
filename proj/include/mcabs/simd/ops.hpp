#ifndef MCABS_SIMD_OPS_HPP
#define MCABS_SIMD_OPS_HPP

#include <cstddef>

// Data-parallel inner loops used by quadrature, chain assembly and pmf
// propagation. Every op has a scalar reference implementation and, where
// the hardware supports it, an AVX2 or NEON variant selected at runtime.
// The env var MCABS_SIMD=scalar|avx2|neon|auto overrides the selection.
namespace mcabs::simd {

enum class Isa { scalar, avx2, neon };

Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);

/// Force a specific implementation (throws if unavailable). Used by the
/// equivalence tests; normal code never calls this.
void force_isa(Isa isa);

/// out[i] = exp(x[i])
void exp_batch(const double* x, double* out, std::size_t n);

/// out[i] = inv_sigma / sqrt(2*pi) * exp(-(u[i]*inv_sigma)^2 / 2),
/// the zero-mean Gaussian pdf with standard deviation 1/inv_sigma.
void gaussian_pdf_batch(const double* u, double* out, std::size_t n, double inv_sigma);

/// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

/// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

}  // namespace mcabs::simd

#endif
