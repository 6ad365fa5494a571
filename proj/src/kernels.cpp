#include "mcabs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "mcabs/simd/ops.hpp"

namespace mcabs {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr std::size_t kBatchChunk = 256;

// max |phi^(h)| of the standard normal pdf, h = 2, 3, 4
double normal_deriv_max(int h) {
    switch (h) {
        case 2:
            return kInvSqrt2Pi;  // attained at 0
        case 3: {
            const double u = std::sqrt(3.0 - std::sqrt(6.0));
            return normal_pdf(u) * (3.0 * u - u * u * u);
        }
        case 4:
            return 3.0 * kInvSqrt2Pi;  // attained at 0
        default:
            throw std::invalid_argument("normal_deriv_max: order not tabulated");
    }
}

// LU determinant with partial pivoting
double det(const std::vector<double>& A, int d) {
    std::vector<double> m = A;
    double sign = 1.0, result = 1.0;
    for (int c = 0; c < d; ++c) {
        int piv = c;
        for (int r = c + 1; r < d; ++r)
            if (std::abs(m[static_cast<std::size_t>(r * d + c)]) >
                std::abs(m[static_cast<std::size_t>(piv * d + c)]))
                piv = r;
        if (m[static_cast<std::size_t>(piv * d + c)] == 0.0) return 0.0;
        if (piv != c) {
            for (int k = 0; k < d; ++k)
                std::swap(m[static_cast<std::size_t>(c * d + k)],
                          m[static_cast<std::size_t>(piv * d + k)]);
            sign = -sign;
        }
        const double pivot = m[static_cast<std::size_t>(c * d + c)];
        result *= pivot;
        for (int r = c + 1; r < d; ++r) {
            const double factor = m[static_cast<std::size_t>(r * d + c)] / pivot;
            for (int k = c; k < d; ++k)
                m[static_cast<std::size_t>(r * d + k)] -=
                    factor * m[static_cast<std::size_t>(c * d + k)];
        }
    }
    return sign * result;
}

class PairIntegrand final : public Integrand {
public:
    explicit PairIntegrand(const Kernel& k) : k_(k) {}
    int dim() const override { return 2 * k_.dim; }
    void eval(const double* pts, double* out, std::size_t n) const override {
        if (k_.pair_batch) {
            k_.pair_batch(pts, out, n);
            return;
        }
        const auto d = static_cast<std::size_t>(k_.dim);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = pts + i * 2 * d;
            out[i] = k_.density(std::span<const double>(row + d, d),
                                std::span<const double>(row, d));
        }
    }

private:
    const Kernel& k_;
};

class SourceIntegrand final : public Integrand {
public:
    SourceIntegrand(const Kernel& k, std::vector<double> next) : k_(k), next_(std::move(next)) {}
    int dim() const override { return k_.dim; }
    void eval(const double* pts, double* out, std::size_t n) const override {
        const auto d = static_cast<std::size_t>(k_.dim);
        if (k_.pair_batch) {
            double rows[kChunk * 6];
            std::size_t done = 0;
            while (done < n) {
                const std::size_t nb = std::min<std::size_t>(kChunk, n - done);
                for (std::size_t i = 0; i < nb; ++i) {
                    double* row = rows + i * 2 * d;
                    for (std::size_t k = 0; k < d; ++k) {
                        row[k] = pts[(done + i) * d + k];
                        row[d + k] = next_[k];
                    }
                }
                k_.pair_batch(rows, out + done, nb);
                done += nb;
            }
            return;
        }
        for (std::size_t i = 0; i < n; ++i)
            out[i] = k_.density(next_, std::span<const double>(pts + i * d, d));
    }

private:
    static constexpr std::size_t kChunk = 128;
    const Kernel& k_;
    std::vector<double> next_;
};

class TargetIntegrand final : public Integrand {
public:
    TargetIntegrand(const Kernel& k, std::vector<double> curr) : k_(k), curr_(std::move(curr)) {}
    int dim() const override { return k_.dim; }
    void eval(const double* pts, double* out, std::size_t n) const override {
        const auto d = static_cast<std::size_t>(k_.dim);
        if (k_.pair_batch) {
            double rows[kChunk * 6];
            std::size_t done = 0;
            while (done < n) {
                const std::size_t nb = std::min<std::size_t>(kChunk, n - done);
                for (std::size_t i = 0; i < nb; ++i) {
                    double* row = rows + i * 2 * d;
                    for (std::size_t k = 0; k < d; ++k) {
                        row[k] = curr_[k];
                        row[d + k] = pts[(done + i) * d + k];
                    }
                }
                k_.pair_batch(rows, out + done, nb);
                done += nb;
            }
            return;
        }
        for (std::size_t i = 0; i < n; ++i)
            out[i] = k_.density(std::span<const double>(pts + i * d, d), curr_);
    }

private:
    static constexpr std::size_t kChunk = 128;
    const Kernel& k_;
    std::vector<double> curr_;
};

}  // namespace

double DerivativeBounds::order(int h) const {
    auto it = axis.find(h);
    if (it == axis.end())
        throw std::invalid_argument("DerivativeBounds: no bound of order " + std::to_string(h));
    if (it->second < 0.0) throw std::invalid_argument("DerivativeBounds: negative bound");
    return it->second;
}

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

std::shared_ptr<Integrand> Kernel::pair_integrand() const {
    return std::make_shared<PairIntegrand>(*this);
}

std::shared_ptr<Integrand> Kernel::source_integrand(std::vector<double> next) const {
    if (static_cast<int>(next.size()) != dim)
        throw std::invalid_argument("source_integrand: point dimension mismatch");
    return std::make_shared<SourceIntegrand>(*this, std::move(next));
}

std::shared_ptr<Integrand> Kernel::target_integrand(std::vector<double> current) const {
    if (static_cast<int>(current.size()) != dim)
        throw std::invalid_argument("target_integrand: point dimension mismatch");
    return std::make_shared<TargetIntegrand>(*this, std::move(current));
}

Kernel Kernel::with_estimated_concentration(const Box& domain, int grid_per_axis,
                                            const QuadratureSpec& spec) const {
    if (domain.dim() != dim)
        throw std::invalid_argument("with_estimated_concentration: dimension mismatch");
    if (grid_per_axis < 2)
        throw std::invalid_argument("with_estimated_concentration: need at least 2 grid points");

    std::size_t total = 1;
    for (int k = 0; k < dim; ++k) total *= static_cast<std::size_t>(grid_per_axis);

    double best = 0.0;
    std::vector<double> next(static_cast<std::size_t>(dim));
    for (std::size_t g = 0; g < total; ++g) {
        std::size_t rem = g;
        for (int k = 0; k < dim; ++k) {
            const auto ik = rem % static_cast<std::size_t>(grid_per_axis);
            rem /= static_cast<std::size_t>(grid_per_axis);
            next[static_cast<std::size_t>(k)] =
                domain.lower[k] + domain.side(k) * (static_cast<double>(ik) + 0.5) /
                                      static_cast<double>(grid_per_axis);
        }
        const auto f = source_integrand(next);
        best = std::max(best, integrate_cell(*f, domain, spec).value);
    }

    Kernel out = *this;
    out.concentration = best;
    out.concentration_certified = false;
    return out;
}

LinearGaussian1d linear_gaussian_1d(double a, double b, double sigma, double alpha,
                                    double init_lo, double init_hi) {
    if (a == 0.0)
        throw std::invalid_argument("linear_gaussian_1d: a = 0 gives a degenerate kernel");
    if (!(sigma > 0.0)) throw std::invalid_argument("linear_gaussian_1d: sigma must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("linear_gaussian_1d: alpha must be > 0");
    if (!(init_lo < init_hi))
        throw std::invalid_argument("linear_gaussian_1d: empty initial interval");

    const double inv_sigma = 1.0 / sigma;
    const double lip = 1.0 / (sigma * sigma * std::sqrt(2.0 * M_PI * M_E));

    Kernel k;
    k.dim = 1;
    k.density = [a, b, sigma](std::span<const double> next, std::span<const double> curr) {
        return normal_pdf((next[0] - a * curr[0] - b) / sigma) / sigma;
    };
    k.pair_batch = [a, b, inv_sigma](const double* pts, double* out, std::size_t n) {
        double u[kBatchChunk];
        std::size_t done = 0;
        while (done < n) {
            const std::size_t nb = std::min<std::size_t>(kBatchChunk, n - done);
            for (std::size_t i = 0; i < nb; ++i) {
                const double* row = pts + (done + i) * 2;
                u[i] = row[1] - a * row[0] - b;
            }
            simd::gaussian_pdf_batch(u, out + done, nb, inv_sigma);
            done += nb;
        }
    };
    k.lip_next = lip;
    k.lip_curr = std::abs(a) * lip;
    k.concentration = 1.0 / std::abs(a);
    k.concentration_certified = true;
    DerivativeBounds db;
    db.axis[2] = normal_deriv_max(2) / (sigma * sigma * sigma);
    db.axis[3] = normal_deriv_max(3) / (sigma * sigma * sigma * sigma);
    db.axis[4] = normal_deriv_max(4) / (sigma * sigma * sigma * sigma * sigma);
    db.second = std::vector<double>{db.axis[2]};
    k.bounds = std::move(db);
    k.band = AffineBand::scalar(a, b, alpha * sigma);
    k.tail_bound = normal_pdf(alpha) / sigma;

    InitialDensity init;
    init.dim = 1;
    init.support = Box({init_lo}, {init_hi});
    const double height = 1.0 / (init_hi - init_lo);
    init.density = [init_lo, init_hi, height](std::span<const double> s) {
        return (s[0] >= init_lo && s[0] <= init_hi) ? height : 0.0;
    };
    init.lip = 0.0;
    init.tail_bound = 0.0;

    return {std::move(k), std::move(init), a, b, sigma, alpha};
}

NoiseDensity gaussian_noise(std::vector<double> sigma, double alpha) {
    const int d = static_cast<int>(sigma.size());
    if (d < 1) throw std::invalid_argument("gaussian_noise: empty sigma");
    for (double s : sigma)
        if (!(s > 0.0)) throw std::invalid_argument("gaussian_noise: sigma must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("gaussian_noise: alpha must be > 0");

    double peak = 1.0;  // product of per-axis pdf maxima
    double sigma_min = sigma[0];
    for (double s : sigma) {
        peak *= kInvSqrt2Pi / s;
        sigma_min = std::min(sigma_min, s);
    }

    NoiseDensity noise;
    noise.dim = d;
    noise.density = [sigma](std::span<const double> u) {
        double v = 1.0;
        for (std::size_t k = 0; k < sigma.size(); ++k)
            v *= normal_pdf(u[k] / sigma[k]) / sigma[k];
        return v;
    };
    noise.batch = [sigma, peak, d](const double* pts, double* out, std::size_t n) {
        double args[kBatchChunk];
        std::size_t done = 0;
        while (done < n) {
            const std::size_t nb = std::min<std::size_t>(kBatchChunk, n - done);
            for (std::size_t i = 0; i < nb; ++i) {
                const double* row = pts + (done + i) * static_cast<std::size_t>(d);
                double q = 0.0;
                for (int k = 0; k < d; ++k) {
                    const double t = row[k] / sigma[static_cast<std::size_t>(k)];
                    q += t * t;
                }
                args[i] = -0.5 * q;
            }
            simd::exp_batch(args, out + done, nb);
            for (std::size_t i = 0; i < nb; ++i) out[done + i] *= peak;
            done += nb;
        }
    };
    noise.lip = peak * std::exp(-0.5) / sigma_min;

    DerivativeBounds db;
    const double d1max = std::exp(-0.5);  // max |u phi(u)| relative to phi(0)
    std::vector<double> second(static_cast<std::size_t>(d));
    std::vector<std::vector<double>> cross(static_cast<std::size_t>(d),
                                           std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int k = 0; k < d; ++k) {
        second[static_cast<std::size_t>(k)] =
            peak / (sigma[static_cast<std::size_t>(k)] * sigma[static_cast<std::size_t>(k)]);
        for (int l = 0; l < d; ++l) {
            if (l == k) continue;
            cross[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                peak * d1max /
                (sigma[static_cast<std::size_t>(k)] * sigma[static_cast<std::size_t>(k)] *
                 sigma[static_cast<std::size_t>(l)]);
        }
    }
    if (d == 1) db.axis[2] = second[0];
    db.second = std::move(second);
    db.cross = std::move(cross);
    if (d == 3)
        db.mixed = peak * d1max * d1max * d1max / (sigma[0] * sigma[1] * sigma[2]);
    noise.bounds = std::move(db);

    std::vector<double> hw(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) hw[static_cast<std::size_t>(k)] = alpha * sigma[static_cast<std::size_t>(k)];
    noise.band_half_width = std::move(hw);
    noise.tail_bound = peak * std::exp(-0.5 * alpha * alpha);
    return noise;
}

Kernel linear_system_kernel(const std::vector<double>& A, const NoiseDensity& noise) {
    const int d = noise.dim;
    if (static_cast<int>(A.size()) != d * d)
        throw std::invalid_argument("linear_system_kernel: A must be dim x dim");
    const double determinant = det(A, d);
    if (determinant == 0.0 || !std::isfinite(determinant))
        throw std::invalid_argument("linear_system_kernel: A must be invertible");
    if (!noise.lip)
        throw std::invalid_argument("linear_system_kernel: noise Lipschitz constant required");

    Kernel k;
    k.dim = d;
    const auto noise_pdf = noise.density;
    const std::vector<double> mat = A;
    k.density = [noise_pdf, mat, d](std::span<const double> next, std::span<const double> curr) {
        double u[3];
        for (int i = 0; i < d; ++i) {
            double v = next[static_cast<std::size_t>(i)];
            for (int j = 0; j < d; ++j)
                v -= mat[static_cast<std::size_t>(i * d + j)] * curr[static_cast<std::size_t>(j)];
            u[i] = v;
        }
        return noise_pdf(std::span<const double>(u, static_cast<std::size_t>(d)));
    };
    if (noise.batch) {
        const auto nbatch = noise.batch;
        k.pair_batch = [nbatch, mat, d](const double* pts, double* out, std::size_t n) {
            double u[kBatchChunk * 3];
            std::size_t done = 0;
            while (done < n) {
                const std::size_t nb = std::min<std::size_t>(kBatchChunk, n - done);
                for (std::size_t r = 0; r < nb; ++r) {
                    const double* row = pts + (done + r) * 2 * static_cast<std::size_t>(d);
                    for (int i = 0; i < d; ++i) {
                        double v = row[d + i];
                        for (int j = 0; j < d; ++j)
                            v -= mat[static_cast<std::size_t>(i * d + j)] * row[j];
                        u[r * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] = v;
                    }
                }
                nbatch(u, out + done, nb);
                done += nb;
            }
        };
    }
    k.lip_next = *noise.lip;
    k.concentration = 1.0 / std::abs(determinant);
    k.concentration_certified = true;
    k.bounds = noise.bounds;
    if (noise.band_half_width) {
        AffineBand band;
        band.linear = A;
        band.offset.assign(static_cast<std::size_t>(d), 0.0);
        band.half_width = *noise.band_half_width;
        k.band = std::move(band);
    }
    k.tail_bound = noise.tail_bound;
    return k;
}

Kernel additive_noise_kernel(std::function<void(std::span<const double>, std::span<double>)> drift,
                             double drift_lip, const NoiseDensity& noise,
                             std::optional<double> concentration) {
    if (!noise.lip)
        throw std::invalid_argument("additive_noise_kernel: noise Lipschitz constant required");
    if (!(drift_lip >= 0.0) || !std::isfinite(drift_lip))
        throw std::invalid_argument("additive_noise_kernel: drift Lipschitz constant must be finite");

    const int d = noise.dim;
    Kernel k;
    k.dim = d;
    const auto noise_pdf = noise.density;
    k.density = [noise_pdf, drift, d](std::span<const double> next, std::span<const double> curr) {
        double fa[3], u[3];
        drift(curr, std::span<double>(fa, static_cast<std::size_t>(d)));
        for (int i = 0; i < d; ++i) u[i] = next[static_cast<std::size_t>(i)] - fa[i];
        return noise_pdf(std::span<const double>(u, static_cast<std::size_t>(d)));
    };
    if (noise.batch) {
        const auto nbatch = noise.batch;
        k.pair_batch = [nbatch, drift, d](const double* pts, double* out, std::size_t n) {
            double u[kBatchChunk * 3];
            double fa[3];
            std::size_t done = 0;
            while (done < n) {
                const std::size_t nb = std::min<std::size_t>(kBatchChunk, n - done);
                for (std::size_t r = 0; r < nb; ++r) {
                    const double* row = pts + (done + r) * 2 * static_cast<std::size_t>(d);
                    drift(std::span<const double>(row, static_cast<std::size_t>(d)),
                          std::span<double>(fa, static_cast<std::size_t>(d)));
                    for (int i = 0; i < d; ++i)
                        u[r * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] =
                            row[d + i] - fa[i];
                }
                nbatch(u, out + done, nb);
                done += nb;
            }
        };
    }
    k.lip_next = *noise.lip;
    k.lip_curr = *noise.lip * drift_lip;
    if (concentration) {
        if (!(*concentration > 0.0))
            throw std::invalid_argument("additive_noise_kernel: concentration must be > 0");
        k.concentration = concentration;
        k.concentration_certified = true;  // caller-supplied analytic value
    }
    k.bounds = noise.bounds;
    k.tail_bound = noise.tail_bound;
    return k;
}

}  // namespace mcabs
