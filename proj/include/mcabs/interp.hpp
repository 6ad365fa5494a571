#ifndef MCABS_INTERP_HPP
#define MCABS_INTERP_HPP

#include <functional>
#include <span>
#include <vector>

#include "mcabs/geometry.hpp"
#include "mcabs/kernels.hpp"

namespace mcabs {

enum class SchemeOrder { constant, polynomial_1d, bilinear, trilinear };

/// Per-cell interpolation scheme with equally spaced nodes. The working
/// basis is always the Lagrange nodal one, so the per-cell interpolation
/// matrix is the identity; monomial coefficients can be converted on entry
/// via nodal_from_monomial.
struct InterpScheme {
    SchemeOrder order = SchemeOrder::constant;
    int dim = 1;
    int nodes_per_cell = 1;

    static InterpScheme constant(int dim);
    static InterpScheme polynomial1d(int h);  // h >= 2 equally spaced nodes incl. endpoints
    static InterpScheme bilinear();
    static InterpScheme trilinear();

    bool multilinear() const {
        return order == SchemeOrder::bilinear || order == SchemeOrder::trilinear ||
               (order == SchemeOrder::polynomial_1d && nodes_per_cell == 2);
    }
};

/// Node coordinates of a scheme within a cell (closed cell; boundary nodes
/// are shared with neighbours).
std::vector<std::vector<double>> scheme_nodes(const InterpScheme& scheme, const Box& cell);

/// Value of the j-th nodal basis function at a point of the cell.
double scheme_basis(const InterpScheme& scheme, const Box& cell, int j,
                    std::span<const double> p);

/// Q[v*h + j] = basis_j(node_v); identity for the nodal basis.
std::vector<double> interpolation_matrix(const InterpScheme& scheme, const Box& cell);

/// Monomial interpolation matrix M[v*h + j] = mono_j(node_v). Monomial
/// ordering: 1D powers 0..h-1; bilinear {1, x, y, xy}; trilinear
/// {1, x, y, z, xy, yz, zx, xyz}.
std::vector<double> monomial_matrix(const InterpScheme& scheme, const Box& cell);

/// Nodal coefficients of the polynomial with the given monomial
/// coefficients (the API-boundary basis conversion).
std::vector<double> nodal_from_monomial(const InterpScheme& scheme, const Box& cell,
                                        std::span<const double> mono);

/// Deduplicated interpolation nodes across a partition: nodes on shared
/// cell boundaries appear once, halving the integral count in 1D.
struct GlobalNodes {
    std::vector<std::vector<double>> points;
    std::vector<std::vector<std::size_t>> cell_to_global;  // [cell][local] -> point index
};
GlobalNodes global_nodes(const Partition& partition, const InterpScheme& scheme);

/// Piecewise interpolant over a partition, stored as per-cell nodal
/// coefficients. Evaluates to 0 outside the domain.
struct DensityApprox {
    Partition partition;
    InterpScheme scheme;
    std::vector<double> coeffs;  // size() * nodes_per_cell
    int time = 0;

    double value(std::span<const double> p) const;
    double value1d(double x) const { return value(std::span<const double>(&x, 1)); }
};

/// Per-cell interpolation of f (exact at the nodes, idempotent).
DensityApprox project(const std::function<double(std::span<const double>)>& f,
                      const Partition& partition, const InterpScheme& scheme);

/// Sup-norm interpolation error bounds per cell diameter delta.
double interp_error_1d(double deriv_bound, int h, double delta);
double interp_error_2d(const DerivativeBounds& bounds, double delta);
double interp_error_3d(const DerivativeBounds& bounds, double delta);

/// Dispatches to the bound matching the scheme; the constant scheme falls
/// back to lip_next * delta.
double scheme_interp_error(const InterpScheme& scheme, const Kernel& kernel, double delta);

}  // namespace mcabs

#endif
