#pragma once

#include <cstddef>

// Dense inner-loop primitives used by the rating engines and the synthetic
// season generator. A scalar reference implementation is always available;
// AVX2 (x86-64) and NEON (aarch64) variants are selected at runtime and are
// bit-identical to the reference (element-wise ops, no FMA, no reductions).

namespace ratekit::kern {

enum class Backend { Scalar, Avx2, Neon };

const char* backend_name(Backend b);

// Currently dispatched backend.
Backend active_backend();

// Force a backend; returns false (and leaves the dispatch unchanged) if the
// host does not support it. Intended for equivalence tests.
bool set_backend(Backend b);

// Restore the best backend the host supports.
void reset_backend();

// y[i] = a * y[i] + b
void scale_add(double* y, std::size_t n, double a, double b);

// y[i] *= a
void scale(double* y, std::size_t n, double a);

// y[i] += a * x[i]
void axpy(double* y, const double* x, std::size_t n, double a);

namespace ref {
void scale_add(double* y, std::size_t n, double a, double b);
void scale(double* y, std::size_t n, double a);
void axpy(double* y, const double* x, std::size_t n, double a);
}  // namespace ref

}  // namespace ratekit::kern
