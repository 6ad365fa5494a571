#include "mcabs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "mcabs/simd/ops.hpp"

namespace mcabs {
namespace {

constexpr std::size_t kBlock = 256;

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const Rule& cached_rule(int m) {
    static std::mutex mtx;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mtx);
    auto it = cache.find(m);
    if (it == cache.end()) {
        Rule r;
        gauss_legendre(m, r.nodes, r.weights);
        it = cache.emplace(m, std::move(r)).first;
    }
    return it->second;
}

// One tensor-rule application over a box.
double tensor_rule(const Integrand& f, const Box& box, const Rule& rule) {
    const int d = box.dim();
    const int m = static_cast<int>(rule.nodes.size());

    // per-axis scaled nodes and weights
    std::vector<double> ax_nodes(static_cast<std::size_t>(d * m));
    std::vector<double> ax_weights(static_cast<std::size_t>(d * m));
    for (int k = 0; k < d; ++k) {
        const double c = 0.5 * (box.lower[k] + box.upper[k]);
        const double h = 0.5 * box.side(k);
        for (int q = 0; q < m; ++q) {
            ax_nodes[static_cast<std::size_t>(k * m + q)] = c + h * rule.nodes[q];
            ax_weights[static_cast<std::size_t>(k * m + q)] = h * rule.weights[q];
        }
    }

    std::size_t total = 1;
    for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(m);

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> pts(kBlock * static_cast<std::size_t>(d));
    std::vector<double> wts(kBlock);
    std::vector<double> vals(kBlock);

    double sum = 0.0;
    std::size_t done = 0;
    while (done < total) {
        const std::size_t nb = std::min(kBlock, total - done);
        for (std::size_t b = 0; b < nb; ++b) {
            double w = 1.0;
            for (int k = 0; k < d; ++k) {
                const auto q = static_cast<std::size_t>(k * m + idx[static_cast<std::size_t>(k)]);
                pts[b * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)] = ax_nodes[q];
                w *= ax_weights[q];
            }
            wts[b] = w;
            // odometer increment
            for (int k = 0; k < d; ++k) {
                if (++idx[static_cast<std::size_t>(k)] < m) break;
                idx[static_cast<std::size_t>(k)] = 0;
            }
        }
        f.eval(pts.data(), vals.data(), nb);
        sum += simd::dot(wts.data(), vals.data(), nb);
        done += nb;
    }
    return sum;
}

void split_dyadic(const Box& box, std::vector<Box>& out) {
    const int d = box.dim();
    const std::size_t children = std::size_t{1} << d;
    out.clear();
    out.reserve(children);
    for (std::size_t c = 0; c < children; ++c) {
        std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) {
            const double mid = 0.5 * (box.lower[k] + box.upper[k]);
            if (c >> k & 1) {
                lo[static_cast<std::size_t>(k)] = mid;
                hi[static_cast<std::size_t>(k)] = box.upper[k];
            } else {
                lo[static_cast<std::size_t>(k)] = box.lower[k];
                hi[static_cast<std::size_t>(k)] = mid;
            }
        }
        out.emplace_back(std::move(lo), std::move(hi));
    }
}

std::string box_id(const Box& box) {
    std::ostringstream os;
    os << "[";
    for (int k = 0; k < box.dim(); ++k) {
        if (k) os << " x ";
        os << "(" << box.lower[k] << "," << box.upper[k] << ")";
    }
    os << "]";
    return os.str();
}

QuadResult adapt(const Integrand& f, const Box& box, double coarse, double tol, int depth,
                 const QuadratureSpec& spec, const Rule& rule) {
    std::vector<Box> children;
    split_dyadic(box, children);
    std::vector<double> child_vals(children.size());
    double fine = 0.0;
    for (std::size_t c = 0; c < children.size(); ++c) {
        child_vals[c] = tensor_rule(f, children[c], rule);
        fine += child_vals[c];
    }
    const double diff = std::abs(fine - coarse);
    if (diff <= tol) return {fine, diff};
    if (depth >= spec.max_depth)
        throw QuadratureError("quadrature did not converge on box " + box_id(box) +
                              " after depth " + std::to_string(depth) +
                              " (last two-level difference " + std::to_string(diff) + ")");
    const double child_tol = tol / static_cast<double>(children.size());
    QuadResult acc;
    for (std::size_t c = 0; c < children.size(); ++c) {
        const QuadResult r = adapt(f, children[c], child_vals[c], child_tol, depth + 1, spec, rule);
        acc.value += r.value;
        acc.error_estimate += r.error_estimate;
    }
    return acc;
}

}  // namespace

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    nodes.assign(static_cast<std::size_t>(m), 0.0);
    weights.assign(static_cast<std::size_t>(m), 0.0);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_m
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing pass after convergence
                double q0 = 1.0, q1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                dp = m * (x * q1 - q0) / (x * x - 1.0);
                break;
            }
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(m - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(m - 1 - i)] = w;
    }
    if (m % 2 == 1) nodes[static_cast<std::size_t>(m / 2)] = 0.0;
}

QuadResult integrate_cell(const Integrand& f, const Box& box, const QuadratureSpec& spec) {
    if (f.dim() != box.dim())
        throw std::invalid_argument("integrate_cell: integrand/box dimension mismatch");
    if (!(spec.abs_tol > 0) || spec.max_depth < 1)
        throw std::invalid_argument("integrate_cell: invalid quadrature spec");
    const Rule& rule = cached_rule(spec.points_per_axis);
    const double coarse = tensor_rule(f, box, rule);
    return adapt(f, box, coarse, spec.abs_tol, 1, spec, rule);
}

}  // namespace mcabs
