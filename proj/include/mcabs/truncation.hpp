#ifndef MCABS_TRUNCATION_HPP
#define MCABS_TRUNCATION_HPP

#include <vector>

#include "mcabs/geometry.hpp"
#include "mcabs/kernels.hpp"

namespace mcabs {

/// Partial geometric sum 1 + m + ... + m^(t-1), evaluated as t when m is
/// within 1e-9 of 1 to avoid catastrophic cancellation.
double geom_sum(int t, double m);

/// Per-step sup-norm bounds on the state density outside its reachable
/// support, from the recursion bound(t+1) = tail + concentration*bound(t).
struct TruncationSchedule {
    double tail = 0.0;          // kernel density bound outside its band
    double initial_tail = 0.0;  // initial density bound outside its support
    double concentration = 1.0;
    int horizon = 0;
    std::vector<double> bounds;  // horizon + 1 entries

    double at(int t) const { return bounds.at(static_cast<std::size_t>(t)); }
};

/// Builds the schedule and cross-checks the recursion against its closed
/// form geom_sum(t, concentration)*tail + concentration^t*initial_tail.
TruncationSchedule truncation_error(double tail, double initial_tail, double concentration,
                                    int horizon);

/// Dense-grid propagation of the truncated density over a 1D domain;
/// a mid-fidelity oracle for tests, never part of a certified path.
struct GridDensity {
    std::vector<double> grid;                 // node coordinates
    std::vector<std::vector<double>> values;  // values[t] over the grid, t = 0..horizon
    bool coarse_grid_warning = false;

    double mass(int t) const;  // trapezoid quadrature of values[t]
};

GridDensity truncated_propagate(const Kernel& kernel, const InitialDensity& init,
                                const Box& domain, int horizon, int grid_points);

}  // namespace mcabs

#endif
