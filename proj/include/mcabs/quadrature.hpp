#ifndef MCABS_QUADRATURE_HPP
#define MCABS_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcabs/geometry.hpp"

namespace mcabs {

struct QuadratureSpec {
    int points_per_axis = 8;
    int max_depth = 12;
    double abs_tol = 1e-8;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Integrands are evaluated in batches: pts holds n rows of dim() coords.
/// Implementations must be pure and callable from multiple threads.
class Integrand {
public:
    virtual ~Integrand() = default;
    virtual int dim() const = 0;
    virtual void eval(const double* pts, double* out, std::size_t n) const = 0;
};

/// Adapter turning a scalar callable into a batch integrand.
template <class F>
class FnIntegrand final : public Integrand {
public:
    FnIntegrand(int dim, F f) : dim_(dim), f_(std::move(f)) {}
    int dim() const override { return dim_; }
    void eval(const double* pts, double* out, std::size_t n) const override {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f_(std::span<const double>(pts + i * static_cast<std::size_t>(dim_),
                                                static_cast<std::size_t>(dim_)));
    }

private:
    int dim_;
    F f_;
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence (exact to machine precision).
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive tensor-product Gauss-Legendre integration over a box: dyadic
/// subdivision driven by the coarse/fine two-level difference until the
/// absolute tolerance is met. Throws QuadratureError when max_depth is
/// exhausted without convergence.
QuadResult integrate_cell(const Integrand& f, const Box& box, const QuadratureSpec& spec);

}  // namespace mcabs

#endif
