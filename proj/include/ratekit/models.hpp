#pragma once

#include <optional>
#include <string>

// Skills-outcome models: likelihood L(z; y), log-likelihood, and its first
// and (negated) second derivatives in z. The argument z is already scaled
// and home-boosted by the caller (z_raw / s + eta); these functions are pure
// in z.

namespace ratekit {

enum class ModelKind { Thurston, BradleyTerry, Davidson, OriginalElo };

const char* model_kind_name(ModelKind kind);

struct ModelSpec {
    ModelKind kind = ModelKind::BradleyTerry;
    double scale_s = 1.0;
    std::optional<double> kappa;  // Davidson draw parameter
    double hfa_eta = 0.0;

    // Number of outcome symbols: 3 for Davidson, 2 otherwise.
    int alphabet_size() const;

    // Throws std::invalid_argument on a malformed spec.
    void validate() const;
};

struct OutcomeDerivatives {
    double log_likelihood = 0.0;
    double gradient_g = 0.0;    // d/dz log L(z; y)
    double hessian_neg_h = 0.0; // -d^2/dz^2 log L(z; y), always >= 0
};

// Probability of outcome y at skill difference z. Throws std::domain_error
// if y is outside the model alphabet.
double likelihood(const ModelSpec& model, double z, int y);

double log_likelihood(const ModelSpec& model, double z, int y);

OutcomeDerivatives derivatives(const ModelSpec& model, double z, int y);

// Expected score Phi(z) of the original Elo update rule; this is the
// Gaussian CDF itself, not the stochastic-gradient step of the Thurston
// model.
double original_elo_expected_score(double z);

}  // namespace ratekit
