#include "ratekit/models.hpp"

#include <cmath>
#include <stdexcept>

#include "ratekit/normal.hpp"

namespace ratekit {

namespace {

constexpr double kLn10 = 2.302585092994045684;
constexpr double kLn10Sq = kLn10 * kLn10;

[[noreturn]] void bad_outcome(const ModelSpec& model, int y) {
    throw std::domain_error(std::string("outcome ") + std::to_string(y) +
                            " is outside the alphabet of the " + model_kind_name(model.kind) +
                            " model");
}

void check_outcome(const ModelSpec& model, int y) {
    if (y < 0 || y >= model.alphabet_size()) bad_outcome(model, y);
}

// Logistic function F_L(z) = 1 / (1 + 10^-z) and friends, computed through
// the non-overflowing exponential branch.
double logistic(double z) {
    const double u = z * kLn10;
    if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
    const double e = std::exp(u);
    return e / (1.0 + e);
}

double log_logistic(double z) {
    const double u = z * kLn10;
    if (u >= 0.0) return -std::log1p(std::exp(-u));
    return u - std::log1p(std::exp(u));
}

// Davidson building blocks. All powers of 10 are normalized by 10^-|z| so
// nothing overflows; pp = 10^(z-|z|), qq = 10^(-z-|z|), rr = kappa*10^-|z|.
struct DavidsonTerms {
    double pp, qq, rr, tt, denom;
};

DavidsonTerms davidson_terms(double z, double kappa) {
    const double az = std::fabs(z);
    DavidsonTerms t;
    t.pp = std::exp((z - az) * kLn10);
    t.qq = std::exp((-z - az) * kLn10);
    t.tt = std::exp(-az * kLn10);
    t.rr = kappa * t.tt;
    t.denom = t.pp + t.qq + t.rr;
    return t;
}

double davidson_g_fraction(const DavidsonTerms& t) {
    // G_D(z) = (10^z + kappa/2) / (10^-z + kappa + 10^z)
    return (t.pp + 0.5 * t.rr) / t.denom;
}

double davidson_kappa(const ModelSpec& model) {
    return *model.kappa;
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Thurston: return "thurston";
        case ModelKind::BradleyTerry: return "bradley-terry";
        case ModelKind::Davidson: return "davidson";
        case ModelKind::OriginalElo: return "original-elo";
    }
    return "unknown";
}

int ModelSpec::alphabet_size() const {
    return kind == ModelKind::Davidson ? 3 : 2;
}

void ModelSpec::validate() const {
    if (!(scale_s > 0.0)) throw std::invalid_argument("model scale s must be positive");
    if (kind == ModelKind::Davidson) {
        if (!kappa) throw std::invalid_argument("davidson model requires a kappa parameter");
        if (!(*kappa >= 0.0)) throw std::invalid_argument("davidson kappa must be nonnegative");
    } else if (kappa) {
        throw std::invalid_argument(std::string("kappa is only meaningful for the davidson model, got it with ") +
                                    model_kind_name(kind));
    }
    if (!std::isfinite(hfa_eta)) throw std::invalid_argument("hfa eta must be finite");
}

double likelihood(const ModelSpec& model, double z, int y) {
    check_outcome(model, y);
    switch (model.kind) {
        case ModelKind::Thurston:
        case ModelKind::OriginalElo:
            return y == 1 ? norm_cdf(z) : norm_cdf(-z);
        case ModelKind::BradleyTerry:
            return y == 1 ? logistic(z) : logistic(-z);
        case ModelKind::Davidson: {
            const auto t = davidson_terms(z, davidson_kappa(model));
            if (y == 0) return t.qq / t.denom;
            if (y == 2) return t.pp / t.denom;
            return davidson_kappa(model) * std::sqrt(t.pp * t.qq) / t.denom;
        }
    }
    bad_outcome(model, y);
}

double log_likelihood(const ModelSpec& model, double z, int y) {
    check_outcome(model, y);
    switch (model.kind) {
        case ModelKind::Thurston:
        case ModelKind::OriginalElo:
            return y == 1 ? log_norm_cdf(z) : log_norm_cdf(-z);
        case ModelKind::BradleyTerry:
            return y == 1 ? log_logistic(z) : log_logistic(-z);
        case ModelKind::Davidson: {
            const auto t = davidson_terms(z, davidson_kappa(model));
            const double log_denom = std::fabs(z) * kLn10 + std::log(t.denom);
            if (y == 0) return -z * kLn10 - log_denom;
            if (y == 2) return z * kLn10 - log_denom;
            return std::log(davidson_kappa(model)) - log_denom;
        }
    }
    bad_outcome(model, y);
}

OutcomeDerivatives derivatives(const ModelSpec& model, double z, int y) {
    check_outcome(model, y);
    OutcomeDerivatives d;
    d.log_likelihood = log_likelihood(model, z, y);
    switch (model.kind) {
        case ModelKind::Thurston:
            d.gradient_g = y == 1 ? mills_v(z) : -mills_v(-z);
            d.hessian_neg_h = y == 1 ? mills_w(z) : mills_w(-z);
            break;
        case ModelKind::BradleyTerry:
            d.gradient_g = kLn10 * (static_cast<double>(y) - logistic(z));
            d.hessian_neg_h = kLn10Sq * logistic(z) * logistic(-z);
            break;
        case ModelKind::Davidson: {
            const double kappa = davidson_kappa(model);
            const auto t = davidson_terms(z, kappa);
            d.gradient_g = 2.0 * kLn10 * (0.5 * static_cast<double>(y) - davidson_g_fraction(t));
            // (kappa*10^z + 4 + kappa*10^-z) / denom^2, scaled by 10^-2|z|.
            d.hessian_neg_h = kLn10Sq * t.tt * (kappa * (t.pp + t.qq) + 4.0 * t.tt) /
                              (t.denom * t.denom);
            break;
        }
        case ModelKind::OriginalElo:
            d.gradient_g = static_cast<double>(y) - norm_cdf(z);
            d.hessian_neg_h = 0.0;
            break;
    }
    return d;
}

double original_elo_expected_score(double z) {
    return norm_cdf(z);
}

}  // namespace ratekit
