#ifndef MCABS_GEOMETRY_HPP
#define MCABS_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace mcabs {

/// Axis-aligned box with nonempty interior.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    Box() = default;
    Box(std::vector<double> lo, std::vector<double> hi);

    int dim() const { return static_cast<int>(lower.size()); }
    double side(int k) const { return upper[k] - lower[k]; }
    double volume() const;
    double diameter() const;  // Euclidean diagonal
    bool contains(std::span<const double> p) const;
    bool contains_box(const Box& other) const;
    Box intersect(const Box& other) const;  // empty result -> throws
    bool intersects(const Box& other) const;
};

/// Band-shaped support set of a transition kernel: for each current state s
/// the reachable next states form the box  linear*s + offset +- half_width.
struct AffineBand {
    std::vector<double> linear;      // d x d, row-major
    std::vector<double> offset;      // d
    std::vector<double> half_width;  // d, all > 0

    int dim() const { return static_cast<int>(offset.size()); }

    /// Reachable-state box for a single current state.
    Box section(std::span<const double> s) const;

    /// Box hull of the union of section(s) over all s in the given box.
    /// Exact when `linear` is diagonal, conservative otherwise.
    Box reach_hull(const Box& from) const;

    static AffineBand scalar(double a, double b, double half_width);
};

/// Uniform axis-aligned grid over a box domain. Cells are half-open on
/// their upper faces except along the domain boundary, so every point of
/// the domain belongs to exactly one cell. Cell indices are row-major
/// with axis 0 varying fastest. Index n() is the implicit sink (the
/// complement of the domain).
class Partition {
public:
    Partition() = default;
    Partition(Box domain, std::vector<int> cells_per_axis);

    const Box& domain() const { return domain_; }
    int dim() const { return domain_.dim(); }
    std::size_t size() const { return n_; }            // number of interior cells
    std::size_t sink_index() const { return n_; }
    double delta() const { return delta_; }            // max cell diameter (all equal)
    double cell_volume() const { return cell_volume_; }
    const std::vector<int>& cells_per_axis() const { return counts_; }

    Box cell(std::size_t i) const;
    std::vector<double> cell_center(std::size_t i) const;

    /// Cell index of a point, or sink_index() if outside the domain.
    std::size_t locate(std::span<const double> p) const;

private:
    Box domain_;
    std::vector<int> counts_;
    std::vector<double> width_;  // per-axis cell width
    std::size_t n_ = 0;
    double delta_ = 0.0;
    double cell_volume_ = 0.0;
};

/// Per-step reachable supports under a band kernel, starting from the
/// support of the initial density: result[0] = initial, result[t+1] =
/// reach_hull(result[t]). Returns horizon+1 boxes.
std::vector<Box> support_sets(const AffineBand& band, const Box& initial, int horizon);

/// Smallest box containing every box in the list.
Box hull(std::span<const Box> boxes);

/// Uniform partition with the given number of cells per axis.
Partition partition_grid(const Box& domain, std::vector<int> cells_per_axis);

/// Uniform partition whose cell diameter does not exceed target_delta.
Partition partition_uniform(const Box& domain, double target_delta);

}  // namespace mcabs

#endif
