#include "ratekit/kernels.hpp"

#include <atomic>

namespace ratekit::kern {

namespace ref {

void scale_add(double* y, std::size_t n, double a, double b) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] * a + b;
}

void scale(double* y, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void axpy(double* y, const double* x, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace ref

#if defined(RATEKIT_HAVE_AVX2)
namespace avx2 {
bool supported();
void scale_add(double* y, std::size_t n, double a, double b);
void scale(double* y, std::size_t n, double a);
void axpy(double* y, const double* x, std::size_t n, double a);
}  // namespace avx2
#endif

#if defined(RATEKIT_HAVE_NEON)
namespace neon {
void scale_add(double* y, std::size_t n, double a, double b);
void scale(double* y, std::size_t n, double a);
void axpy(double* y, const double* x, std::size_t n, double a);
}  // namespace neon
#endif

namespace {

struct Ops {
    void (*scale_add)(double*, std::size_t, double, double);
    void (*scale)(double*, std::size_t, double);
    void (*axpy)(double*, const double*, std::size_t, double);
};

constexpr Ops kScalarOps{&ref::scale_add, &ref::scale, &ref::axpy};

#if defined(RATEKIT_HAVE_AVX2)
constexpr Ops kAvx2Ops{&avx2::scale_add, &avx2::scale, &avx2::axpy};
#endif
#if defined(RATEKIT_HAVE_NEON)
constexpr Ops kNeonOps{&neon::scale_add, &neon::scale, &neon::axpy};
#endif

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(RATEKIT_HAVE_AVX2)
            return avx2::supported();
#else
            return false;
#endif
        case Backend::Neon:
#if defined(RATEKIT_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend best_backend() {
#if defined(RATEKIT_HAVE_AVX2)
    if (avx2::supported()) return Backend::Avx2;
#endif
#if defined(RATEKIT_HAVE_NEON)
    return Backend::Neon;
#endif
    return Backend::Scalar;
}

const Ops& ops_for(Backend b) {
    switch (b) {
#if defined(RATEKIT_HAVE_AVX2)
        case Backend::Avx2:
            return kAvx2Ops;
#endif
#if defined(RATEKIT_HAVE_NEON)
        case Backend::Neon:
            return kNeonOps;
#endif
        default:
            return kScalarOps;
    }
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{best_backend()};
    return slot;
}

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
    if (!backend_supported(b)) return false;
    backend_slot().store(b, std::memory_order_relaxed);
    return true;
}

void reset_backend() { backend_slot().store(best_backend(), std::memory_order_relaxed); }

void scale_add(double* y, std::size_t n, double a, double b) {
    ops_for(active_backend()).scale_add(y, n, a, b);
}

void scale(double* y, std::size_t n, double a) {
    ops_for(active_backend()).scale(y, n, a);
}

void axpy(double* y, const double* x, std::size_t n, double a) {
    ops_for(active_backend()).axpy(y, x, n, a);
}

}  // namespace ratekit::kern
