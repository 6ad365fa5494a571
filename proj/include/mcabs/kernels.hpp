#ifndef MCABS_KERNELS_HPP
#define MCABS_KERNELS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mcabs/geometry.hpp"
#include "mcabs/quadrature.hpp"

namespace mcabs {

/// Bounds on partial derivatives of the transition density with respect to
/// the next state; consumed by the interpolation error formulas. All
/// entries are sup norms over the working domain (or all of space for the
/// built-in families, which is only stronger).
struct DerivativeBounds {
    /// 1D: order h -> bound on |d^h density / d next^h|, h >= 2.
    std::map<int, double> axis;
    /// Per-axis bound on |d^2 density / d next_k^2|.
    std::optional<std::vector<double>> second;
    /// cross[k][l], k != l: bound on |d^3 density / d next_k^2 d next_l|.
    std::optional<std::vector<std::vector<double>>> cross;
    /// 3D only: bound on |d^3 density / d next_1 d next_2 d next_3|.
    std::optional<double> mixed;

    bool has_order(int h) const { return axis.count(h) > 0; }
    double order(int h) const;
};

/// Additive noise distribution used by the built-in kernel families.
struct NoiseDensity {
    int dim = 1;
    std::function<double(std::span<const double>)> density;
    std::optional<double> lip;  // Lipschitz constant of the pdf
    std::optional<DerivativeBounds> bounds;
    std::optional<std::vector<double>> band_half_width;  // support box half-widths
    double tail_bound = 0.0;                             // pdf bound outside the band
    /// Optional batched pdf: rows of dim coords -> values.
    std::function<void(const double*, double*, std::size_t)> batch;
};

/// Conditional density of the Markov process together with every certified
/// constant the error formulas consume. Immutable after construction; the
/// evaluators are pure and may be called concurrently from any thread.
struct Kernel {
    int dim = 1;
    /// density(next, current) -> value, a probability density in `next`.
    std::function<double(std::span<const double>, std::span<const double>)> density;

    double lip_next = 0.0;                // Lipschitz constant in the next state
    std::optional<double> lip_curr;       // Lipschitz constant in the current state
    std::optional<double> concentration;  // sup over next of integral d(current)
    bool concentration_certified = false;
    std::optional<double> stay_bound;     // sup prob. of remaining in the safe set, <= 1
    std::optional<DerivativeBounds> bounds;
    std::optional<AffineBand> band;       // support band of the density
    double tail_bound = 0.0;              // density bound outside the band

    /// Optional fast path: batched evaluation of rows laid out as
    /// (current..., next...), 2*dim coords per row.
    std::function<void(const double*, double*, std::size_t)> pair_batch;

    double density_at(std::span<const double> next, std::span<const double> curr) const {
        return density(next, curr);
    }

    /// Integrand over (current, next) in R^{2 dim}; rows (current..., next...).
    std::shared_ptr<Integrand> pair_integrand() const;
    /// Integrand over current with the next state fixed.
    std::shared_ptr<Integrand> source_integrand(std::vector<double> next) const;
    /// Integrand over next with the current state fixed.
    std::shared_ptr<Integrand> target_integrand(std::vector<double> current) const;

    /// Copy with a sampled concentration bound (max over a grid of next
    /// states of the integral over `domain`). The result is flagged
    /// uncertified: a sampled maximum cannot certify a sup.
    Kernel with_estimated_concentration(const Box& domain, int grid_per_axis,
                                        const QuadratureSpec& spec) const;
};

/// Initial state density with its certified constants.
struct InitialDensity {
    int dim = 1;
    std::function<double(std::span<const double>)> density;
    double lip = 0.0;        // Lipschitz constant inside the support
    Box support;             // bounded support box
    double tail_bound = 0.0; // density bound outside the support
};

struct LinearGaussian1d {
    Kernel kernel;
    InitialDensity init;
    double a, b, sigma, alpha;
};

/// next = a*current + b + sigma*w with standard normal w, uniform initial
/// state on [init_lo, init_hi]. All constants are filled analytically; the
/// band keeps |next - a*current - b| <= alpha*sigma.
LinearGaussian1d linear_gaussian_1d(double a, double b, double sigma, double alpha,
                                    double init_lo, double init_hi);

/// next = A*current + w for an invertible d x d matrix A (row-major).
Kernel linear_system_kernel(const std::vector<double>& A, const NoiseDensity& noise);

/// next = drift(current) + w. The concentration bound has no analytic form
/// here; pass one, or estimate it later via with_estimated_concentration.
Kernel additive_noise_kernel(
    std::function<void(std::span<const double>, std::span<double>)> drift, double drift_lip,
    const NoiseDensity& noise, std::optional<double> concentration = std::nullopt);

/// Independent zero-mean Gaussian noise with the given per-axis standard
/// deviations, truncated at alpha standard deviations per axis.
NoiseDensity gaussian_noise(std::vector<double> sigma, double alpha);

/// Standard normal pdf and cdf.
double normal_pdf(double x);
double normal_cdf(double x);

}  // namespace mcabs

#endif
