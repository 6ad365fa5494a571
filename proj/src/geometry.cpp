#include "mcabs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace mcabs {

Box::Box(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size() || lower.empty())
        throw std::invalid_argument("Box: dimension mismatch or empty");
    for (std::size_t k = 0; k < lower.size(); ++k)
        if (!(lower[k] < upper[k]))
            throw std::invalid_argument("Box: lower must be strictly below upper on every axis");
}

double Box::volume() const {
    double v = 1.0;
    for (int k = 0; k < dim(); ++k) v *= side(k);
    return v;
}

double Box::diameter() const {
    double s = 0.0;
    for (int k = 0; k < dim(); ++k) s += side(k) * side(k);
    return std::sqrt(s);
}

bool Box::contains(std::span<const double> p) const {
    for (int k = 0; k < dim(); ++k)
        if (p[k] < lower[k] || p[k] > upper[k]) return false;
    return true;
}

bool Box::contains_box(const Box& other) const {
    for (int k = 0; k < dim(); ++k)
        if (other.lower[k] < lower[k] || other.upper[k] > upper[k]) return false;
    return true;
}

bool Box::intersects(const Box& other) const {
    for (int k = 0; k < dim(); ++k)
        if (other.upper[k] <= lower[k] || other.lower[k] >= upper[k]) return false;
    return true;
}

Box Box::intersect(const Box& other) const {
    std::vector<double> lo(lower.size()), hi(lower.size());
    for (int k = 0; k < dim(); ++k) {
        lo[k] = std::max(lower[k], other.lower[k]);
        hi[k] = std::min(upper[k], other.upper[k]);
        if (!(lo[k] < hi[k])) throw std::invalid_argument("Box::intersect: empty intersection");
    }
    return Box(std::move(lo), std::move(hi));
}

Box AffineBand::section(std::span<const double> s) const {
    const int d = dim();
    std::vector<double> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        double c = offset[i];
        for (int j = 0; j < d; ++j) c += linear[i * d + j] * s[j];
        lo[i] = c - half_width[i];
        hi[i] = c + half_width[i];
    }
    return Box(std::move(lo), std::move(hi));
}

Box AffineBand::reach_hull(const Box& from) const {
    const int d = dim();
    if (from.dim() != d) throw std::invalid_argument("AffineBand::reach_hull: dimension mismatch");
    std::vector<double> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        double cmin = offset[i], cmax = offset[i];
        for (int j = 0; j < d; ++j) {
            const double a = linear[i * d + j];
            cmin += std::min(a * from.lower[j], a * from.upper[j]);
            cmax += std::max(a * from.lower[j], a * from.upper[j]);
        }
        lo[i] = cmin - half_width[i];
        hi[i] = cmax + half_width[i];
    }
    return Box(std::move(lo), std::move(hi));
}

AffineBand AffineBand::scalar(double a, double b, double half_width) {
    if (!(half_width > 0)) throw std::invalid_argument("AffineBand: half_width must be positive");
    return AffineBand{{a}, {b}, {half_width}};
}

Partition::Partition(Box domain, std::vector<int> cells_per_axis)
    : domain_(std::move(domain)), counts_(std::move(cells_per_axis)) {
    if (static_cast<int>(counts_.size()) != domain_.dim())
        throw std::invalid_argument("Partition: counts/domain dimension mismatch");
    n_ = 1;
    width_.resize(counts_.size());
    double diag2 = 0.0;
    cell_volume_ = 1.0;
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] < 1) throw std::invalid_argument("Partition: cell count must be >= 1");
        n_ *= static_cast<std::size_t>(counts_[k]);
        width_[k] = domain_.side(static_cast<int>(k)) / counts_[k];
        diag2 += width_[k] * width_[k];
        cell_volume_ *= width_[k];
    }
    delta_ = std::sqrt(diag2);
}

Box Partition::cell(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("Partition::cell: index is the sink or out of range");
    const int d = dim();
    std::vector<double> lo(d), hi(d);
    for (int k = 0; k < d; ++k) {
        const auto c = static_cast<std::size_t>(counts_[k]);
        const std::size_t ik = i % c;
        i /= c;
        lo[k] = domain_.lower[k] + static_cast<double>(ik) * width_[k];
        hi[k] = (ik + 1 == c) ? domain_.upper[k]
                              : domain_.lower[k] + static_cast<double>(ik + 1) * width_[k];
    }
    return Box(std::move(lo), std::move(hi));
}

std::vector<double> Partition::cell_center(std::size_t i) const {
    Box b = cell(i);
    std::vector<double> c(b.dim());
    for (int k = 0; k < b.dim(); ++k) c[k] = 0.5 * (b.lower[k] + b.upper[k]);
    return c;
}

std::size_t Partition::locate(std::span<const double> p) const {
    const int d = dim();
    std::size_t idx = 0, stride = 1;
    for (int k = 0; k < d; ++k) {
        if (p[k] < domain_.lower[k] || p[k] > domain_.upper[k]) return sink_index();
        auto ik = static_cast<long>(std::floor((p[k] - domain_.lower[k]) / width_[k]));
        ik = std::clamp(ik, 0L, static_cast<long>(counts_[k]) - 1L);
        idx += static_cast<std::size_t>(ik) * stride;
        stride *= static_cast<std::size_t>(counts_[k]);
    }
    return idx;
}

std::vector<Box> support_sets(const AffineBand& band, const Box& initial, int horizon) {
    if (horizon < 0) throw std::invalid_argument("support_sets: horizon must be >= 0");
    std::vector<Box> out;
    out.reserve(static_cast<std::size_t>(horizon) + 1);
    out.push_back(initial);
    for (int t = 0; t < horizon; ++t) out.push_back(band.reach_hull(out.back()));
    return out;
}

Box hull(std::span<const Box> boxes) {
    if (boxes.empty()) throw std::invalid_argument("hull: empty list");
    std::vector<double> lo = boxes[0].lower, hi = boxes[0].upper;
    for (const Box& b : boxes.subspan(1)) {
        for (std::size_t k = 0; k < lo.size(); ++k) {
            lo[k] = std::min(lo[k], b.lower[k]);
            hi[k] = std::max(hi[k], b.upper[k]);
        }
    }
    return Box(std::move(lo), std::move(hi));
}

Partition partition_grid(const Box& domain, std::vector<int> cells_per_axis) {
    return Partition(domain, std::move(cells_per_axis));
}

Partition partition_uniform(const Box& domain, double target_delta) {
    if (!(target_delta > 0)) throw std::invalid_argument("partition_uniform: target_delta must be > 0");
    if (target_delta > domain.diameter())
        std::cerr << "mcabs: warning: target diameter " << target_delta
                  << " exceeds the domain diameter; using a single cell\n";
    const int d = domain.dim();
    const double per_axis = target_delta / std::sqrt(static_cast<double>(d));
    std::vector<int> counts(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
        counts[static_cast<std::size_t>(k)] =
            std::max(1, static_cast<int>(std::ceil(domain.side(k) / per_axis - 1e-12)));
    return Partition(domain, std::move(counts));
}

}  // namespace mcabs
