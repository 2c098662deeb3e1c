#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ratekit/matrix.hpp"
#include "ratekit/models.hpp"
#include "ratekit/schedule.hpp"

// Online rating engines sharing one game interface: the Kalman filter and
// its simplified variants (per-player vector, shared scalar, and fixed
// posterior variance), the plain stochastic-gradient update, and the
// TrueSkill / Glicko / Elo reference algorithms.

namespace ratekit {

enum class Algorithm { KF, VSKF, SSKF, FSKF, SG, TrueSkill, Glicko, Elo };

const char* algorithm_name(Algorithm a);

struct EngineConfig {
    Algorithm algorithm = Algorithm::VSKF;
    ModelSpec model;
    DynamicsParams dynamics;
    std::optional<double> v0;      // prior skill variance (KF/vSKF/sSKF/TrueSkill/Glicko)
    std::optional<double> v_bar;   // fixed posterior variance (fSKF)
    std::optional<double> step_K;  // adaptation step (SG/Elo)
    std::optional<double> sigma;   // TrueSkill/Glicko scale

    // Enforces that exactly the fields the algorithm needs are present and
    // that the model is admissible for it. Throws std::invalid_argument.
    void validate() const;

    // Scale dividing the skill difference: sigma for TrueSkill/Glicko, the
    // model scale otherwise.
    double prediction_scale() const;
};

struct ScalarCovariance {
    double v = 0.0;
    bool operator==(const ScalarCovariance&) const = default;
};

struct FixedCovariance {
    double v = 0.0;
    bool operator==(const FixedCovariance&) const = default;
};

// monostate: mean-only engines (SG/Elo); Matrix: KF; vector: vSKF, TrueSkill,
// Glicko; ScalarCovariance: sSKF; FixedCovariance: fSKF.
using Covariance =
    std::variant<std::monostate, Matrix, std::vector<double>, ScalarCovariance, FixedCovariance>;

struct RatingState {
    std::vector<double> mu;
    Covariance cov;
    std::int64_t t_index = 0;  // last processed game counter
    std::int64_t tau = 0;      // last processed day stamp

    std::size_t player_count() const { return mu.size(); }

    // Posterior variance of one player, if the engine tracks any.
    std::optional<double> variance_of(std::size_t m) const;
};

RatingState init(const EngineConfig& config, std::size_t player_count);

void step_inplace(RatingState& state, const GameRecord& game, const EngineConfig& config);
RatingState step(const RatingState& state, const GameRecord& game, const EngineConfig& config);

// Predicted (scaled, boosted) skill difference the engine would feed into
// the outcome model for this game: beta_t * x' mu / s + eta.
double predict_z(const RatingState& state, const GameRecord& game, const EngineConfig& config);

// Re-initialize the listed players: zero mean, prior variance, and (for the
// KF) zeroed covariance rows/columns; the sSKF blends its shared variance by
// the replaced fraction.
void reset_players_inplace(RatingState& state, std::span<const std::uint32_t> player_ids,
                           const EngineConfig& config);
RatingState reset_players(const RatingState& state, std::span<const std::uint32_t> player_ids,
                          const EngineConfig& config);

}  // namespace ratekit
