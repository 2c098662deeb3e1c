#include <cstddef>

#include <immintrin.h>

// AVX2 variants of the dense kernels. Mul/add only (no FMA) so results match
// the scalar reference bit for bit; this file is compiled with -mavx2 and is
// only entered after the cpuid check in supported().

namespace ratekit::kern::avx2 {

bool supported() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

void scale_add(double* y, std::size_t n, double a, double b) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(y + i);
        v = _mm256_add_pd(_mm256_mul_pd(v, va), vb);
        _mm256_storeu_pd(y + i, v);
    }
    for (; i < n; ++i) y[i] = y[i] * a + b;
}

void scale(double* y, std::size_t n, double a) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), va));
    }
    for (; i < n; ++i) y[i] *= a;
}

void axpy(double* y, const double* x, std::size_t n, double a) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace ratekit::kern::avx2
