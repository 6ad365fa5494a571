#include "mcabs/truncation.hpp"

#include <cmath>
#include <stdexcept>

#include "mcabs/simd/ops.hpp"
#include "mcabs/util/parallel.hpp"

namespace mcabs {

double geom_sum(int t, double m) {
    if (t < 0) throw std::invalid_argument("geom_sum: t must be >= 0");
    if (std::abs(m - 1.0) < 1e-9) return static_cast<double>(t);
    return (1.0 - std::pow(m, t)) / (1.0 - m);
}

TruncationSchedule truncation_error(double tail, double initial_tail, double concentration,
                                    int horizon) {
    if (tail < 0.0 || initial_tail < 0.0)
        throw std::invalid_argument("truncation_error: tail bounds must be >= 0");
    if (!(concentration > 0.0))
        throw std::invalid_argument("truncation_error: concentration must be > 0");
    if (horizon < 0) throw std::invalid_argument("truncation_error: horizon must be >= 0");

    TruncationSchedule s;
    s.tail = tail;
    s.initial_tail = initial_tail;
    s.concentration = concentration;
    s.horizon = horizon;
    s.bounds.resize(static_cast<std::size_t>(horizon) + 1);
    s.bounds[0] = initial_tail;
    for (int t = 0; t < horizon; ++t)
        s.bounds[static_cast<std::size_t>(t) + 1] =
            tail + concentration * s.bounds[static_cast<std::size_t>(t)];

    for (int t = 0; t <= horizon; ++t) {
        const double closed =
            geom_sum(t, concentration) * tail + std::pow(concentration, t) * initial_tail;
        const double rec = s.bounds[static_cast<std::size_t>(t)];
        const double scale = std::max({std::abs(closed), std::abs(rec), 1e-300});
        if (std::abs(closed - rec) > 1e-12 * scale)
            throw std::logic_error("truncation_error: recursion and closed form disagree");
    }
    return s;
}

double GridDensity::mass(int t) const {
    const auto& v = values.at(static_cast<std::size_t>(t));
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        m += 0.5 * (v[i] + v[i + 1]) * (grid[i + 1] - grid[i]);
    return m;
}

GridDensity truncated_propagate(const Kernel& kernel, const InitialDensity& init,
                                const Box& domain, int horizon, int grid_points) {
    if (kernel.dim != 1 || init.dim != 1 || domain.dim() != 1)
        throw std::invalid_argument("truncated_propagate: grid oracle supports 1D only");
    if (grid_points < 3) throw std::invalid_argument("truncated_propagate: need >= 3 grid points");
    if (horizon < 0) throw std::invalid_argument("truncated_propagate: horizon must be >= 0");

    GridDensity out;
    const std::size_t g = static_cast<std::size_t>(grid_points);
    out.grid.resize(g);
    const double lo = domain.lower[0], hi = domain.upper[0];
    const double step = (hi - lo) / static_cast<double>(g - 1);
    for (std::size_t i = 0; i < g; ++i) out.grid[i] = lo + step * static_cast<double>(i);

    if (kernel.band && step > 0.25 * kernel.band->half_width[0]) out.coarse_grid_warning = true;

    // trapezoid weights
    std::vector<double> w(g, step);
    w.front() = w.back() = 0.5 * step;

    out.values.assign(static_cast<std::size_t>(horizon) + 1, std::vector<double>(g, 0.0));
    for (std::size_t i = 0; i < g; ++i) {
        const double x = out.grid[i];
        if (x >= init.support.lower[0] && x <= init.support.upper[0])
            out.values[0][i] = init.density(std::span<const double>(&x, 1));
    }

    std::vector<double> weighted(g);
    for (int t = 0; t < horizon; ++t) {
        const auto& cur = out.values[static_cast<std::size_t>(t)];
        auto& next = out.values[static_cast<std::size_t>(t) + 1];
        for (std::size_t j = 0; j < g; ++j) weighted[j] = w[j] * cur[j];
        parallel_for(g, [&](std::size_t begin, std::size_t end) {
            std::vector<double> rows(2 * g);
            std::vector<double> dens(g);
            const auto f = kernel.pair_integrand();
            for (std::size_t i = begin; i < end; ++i) {
                for (std::size_t j = 0; j < g; ++j) {
                    rows[2 * j] = out.grid[j];      // current
                    rows[2 * j + 1] = out.grid[i];  // next
                }
                f->eval(rows.data(), dens.data(), g);
                next[i] = simd::dot(weighted.data(), dens.data(), g);
            }
        });
    }
    return out;
}

}  // namespace mcabs
