#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ratekit/matrix.hpp"

// KL-optimal projections of a Gaussian covariance summary onto the simpler
// covariance families: full matrix -> per-player vector -> shared scalar.
// The mean is untouched by these projections.

namespace ratekit {

// di(V): closest diagonal covariance in KL divergence.
std::vector<double> project_to_diagonal(const Matrix& v);

// Arithmetic mean of the per-player variances: closest scalar covariance.
// Throws std::domain_error on empty input.
double project_to_scalar(std::span<const double> v);

// Lower-triangular Cholesky factor, or nullopt if a pivot drops below tol
// (the matrix is then not PSD for our purposes).
std::optional<Matrix> cholesky(const Matrix& v, double pivot_tol = 1e-10);

bool is_psd(const Matrix& v, double pivot_tol = 1e-10);

}  // namespace ratekit
