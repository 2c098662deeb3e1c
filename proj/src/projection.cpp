#include "ratekit/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace ratekit {

std::vector<double> project_to_diagonal(const Matrix& v) {
    std::vector<double> d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = v(i, i);
    return d;
}

double project_to_scalar(std::span<const double> v) {
    if (v.empty()) throw std::domain_error("cannot average an empty variance vector");
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

std::optional<Matrix> cholesky(const Matrix& v, double pivot_tol) {
    const std::size_t n = v.size();
    Matrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = v(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (diag <= pivot_tol) {
            if (diag < -pivot_tol) return std::nullopt;
            // Semidefinite pivot: the column below must vanish as well.
            for (std::size_t i = j + 1; i < n; ++i) {
                double off = v(i, j);
                for (std::size_t k = 0; k < j; ++k) off -= l(i, k) * l(j, k);
                if (std::fabs(off) > pivot_tol) return std::nullopt;
            }
            continue;
        }
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double off = v(i, j);
            for (std::size_t k = 0; k < j; ++k) off -= l(i, k) * l(j, k);
            l(i, j) = off / l(j, j);
        }
    }
    return l;
}

bool is_psd(const Matrix& v, double pivot_tol) {
    return cholesky(v, pivot_tol).has_value();
}

}  // namespace ratekit
