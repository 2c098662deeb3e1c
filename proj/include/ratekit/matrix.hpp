#pragma once

#include <cstddef>
#include <vector>

namespace ratekit {

// Minimal square row-major matrix; big enough for the posterior covariances
// handled here (tens of players, not thousands).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double diagonal = 0.0) : n_(n), a_(n * n, 0.0) {
        for (std::size_t i = 0; i < n; ++i) a_[i * n + i] = diagonal;
    }

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    double* row(std::size_t i) { return a_.data() + i * n_; }
    const double* row(std::size_t i) const { return a_.data() + i * n_; }

    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

}  // namespace ratekit
