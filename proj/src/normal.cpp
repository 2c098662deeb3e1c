#include "ratekit/normal.hpp"

#include <cmath>

namespace ratekit {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
constexpr double kInvSqrt2 = 0.7071067811865475244;    // 1/sqrt(2)
constexpr double kSqrt2OverPi = 0.7978845608028653559; // sqrt(2/pi)
constexpr double kInvSqrtPi = 0.5641895835477562869;   // 1/sqrt(pi)
}  // namespace

double norm_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

double erfcx_pos(double x) {
    if (x < 26.0) {
        // exp(x^2) stays below DBL_MAX and erfc(x) above the denormal range.
        return std::exp(x * x) * std::erfc(x);
    }
    // Asymptotic series erfcx(x) ~ 1/(x sqrt(pi)) * sum (-1)^k (2k-1)!!/(2x^2)^k.
    const double r = 0.5 / (x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 6; ++k) {
        term *= -r * static_cast<double>(2 * k - 1);
        sum += term;
    }
    return sum * kInvSqrtPi / x;
}

double mills_v(double z) {
    if (z >= 0.0) return norm_pdf(z) / norm_cdf(z);
    return kSqrt2OverPi / erfcx_pos(-z * kInvSqrt2);
}

double mills_w(double z) {
    const double v = mills_v(z);
    return v * (z + v);
}

double log_norm_cdf(double z) {
    if (z < -5.0) {
        // cdf(z) = pdf(z) / V(z)
        return -0.5 * z * z + std::log(kInvSqrt2Pi) - std::log(mills_v(z));
    }
    if (z > 5.0) return std::log1p(-norm_cdf(-z));
    return std::log(norm_cdf(z));
}

}  // namespace ratekit
