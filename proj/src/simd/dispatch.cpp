#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

#include "kernels.hpp"
#include "mcabs/simd/ops.hpp"

namespace mcabs::simd {
namespace {

struct OpsTable {
    void (*exp_batch)(const double*, double*, std::size_t);
    void (*gaussian_pdf_batch)(const double*, double*, std::size_t, double);
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
};

constexpr OpsTable kScalarTable{detail::exp_batch_scalar, detail::gaussian_pdf_batch_scalar,
                                detail::dot_scalar, detail::axpy_scalar};

#if defined(MCABS_HAVE_AVX2_BUILD)
constexpr OpsTable kAvx2Table{detail::exp_batch_avx2, detail::gaussian_pdf_batch_avx2,
                              detail::dot_avx2, detail::axpy_avx2};
#endif
#if defined(MCABS_HAVE_NEON_BUILD)
constexpr OpsTable kNeonTable{detail::exp_batch_neon, detail::gaussian_pdf_batch_neon,
                              detail::dot_neon, detail::axpy_neon};
#endif

Isa g_isa = Isa::scalar;
const OpsTable* g_ops = &kScalarTable;
std::once_flag g_init;

const OpsTable* table_for(Isa isa) {
    switch (isa) {
#if defined(MCABS_HAVE_AVX2_BUILD)
        case Isa::avx2:
            return &kAvx2Table;
#endif
#if defined(MCABS_HAVE_NEON_BUILD)
        case Isa::neon:
            return &kNeonTable;
#endif
        case Isa::scalar:
        default:
            return &kScalarTable;
    }
}

Isa best_available() {
#if defined(MCABS_HAVE_AVX2_BUILD)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
#if defined(MCABS_HAVE_NEON_BUILD)
    return Isa::neon;
#endif
    return Isa::scalar;
}

void init_once() {
    std::call_once(g_init, [] {
        Isa isa = best_available();
        if (const char* env = std::getenv("MCABS_SIMD")) {
            const std::string v(env);
            if (v == "scalar")
                isa = Isa::scalar;
            else if (v == "avx2" && isa_available(Isa::avx2))
                isa = Isa::avx2;
            else if (v == "neon" && isa_available(Isa::neon))
                isa = Isa::neon;
            // "auto" or anything unavailable keeps the detected best
        }
        g_isa = isa;
        g_ops = table_for(isa);
    });
}

}  // namespace

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(MCABS_HAVE_AVX2_BUILD)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(MCABS_HAVE_NEON_BUILD)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() {
    init_once();
    return g_isa;
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

void force_isa(Isa isa) {
    init_once();
    if (!isa_available(isa))
        throw std::runtime_error(std::string("simd: isa not available: ") + isa_name(isa));
    g_isa = isa;
    g_ops = table_for(isa);
}

void exp_batch(const double* x, double* out, std::size_t n) {
    init_once();
    g_ops->exp_batch(x, out, n);
}

void gaussian_pdf_batch(const double* u, double* out, std::size_t n, double inv_sigma) {
    init_once();
    g_ops->gaussian_pdf_batch(u, out, n, inv_sigma);
}

double dot(const double* a, const double* b, std::size_t n) {
    init_once();
    return g_ops->dot(a, b, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    init_once();
    g_ops->axpy(a, x, y, n);
}

}  // namespace mcabs::simd
