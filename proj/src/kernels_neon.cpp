#include <cstddef>

#include <arm_neon.h>

// NEON variants (aarch64, where AdvSIMD is architectural). Mul/add only so
// results match the scalar reference bit for bit.

namespace ratekit::kern::neon {

void scale_add(double* y, std::size_t n, double a, double b) {
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vb = vdupq_n_f64(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(y + i);
        v = vaddq_f64(vmulq_f64(v, va), vb);
        vst1q_f64(y + i, v);
    }
    for (; i < n; ++i) y[i] = y[i] * a + b;
}

void scale(double* y, std::size_t n, double a) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vmulq_f64(vld1q_f64(y + i), va));
    }
    for (; i < n; ++i) y[i] *= a;
}

void axpy(double* y, const double* x, std::size_t n, double a) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        float64x2_t vx = vld1q_f64(x + i);
        vy = vaddq_f64(vy, vmulq_f64(va, vx));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace ratekit::kern::neon
