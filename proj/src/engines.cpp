#include "ratekit/engines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ratekit/kernels.hpp"

namespace ratekit {

namespace {

constexpr double kLn10 = 2.302585092994045684;
constexpr double kPi = 3.141592653589793238;
// Logistic-to-Gaussian variance matching factor used by Glicko.
const double kGlickoA = 3.0 * kLn10 * kLn10 / (kPi * kPi);

constexpr double kDenomFloor = 1e-12;

[[noreturn]] void config_error(const EngineConfig& cfg, const std::string& what) {
    throw std::invalid_argument(std::string(algorithm_name(cfg.algorithm)) + ": " + what);
}

void require_field(const EngineConfig& cfg, const std::optional<double>& field, const char* name) {
    if (!field) config_error(cfg, std::string("requires ") + name);
    if (!(*field > 0.0)) config_error(cfg, std::string(name) + " must be positive");
}

void forbid_field(const EngineConfig& cfg, const std::optional<double>& field, const char* name) {
    if (field) config_error(cfg, std::string("does not take ") + name);
}

struct GameStep {
    StepCoefficients coef;
    double z_sum;  // x' mu_{t-1}, before damping
    int outcome;
};

double participant_sum(const GameRecord& game, std::span<const double> v) {
    double sum = 0.0;
    for (auto id : game.home_ids) sum += v[id];
    for (auto id : game.away_ids) sum += v[id];
    return sum;
}

double guarded_denominator(double s, double h, double omega) {
    const double den = s * s + h * omega;
    const double floor = s * s * kDenomFloor;
    return den > floor ? den : floor;
}

std::size_t balanced_group_size(const GameRecord& game, const EngineConfig& cfg) {
    if (game.home_ids.size() != game.away_ids.size()) {
        throw std::domain_error(std::string(algorithm_name(cfg.algorithm)) +
                                " requires equally sized groups, got " +
                                std::to_string(game.home_ids.size()) + " vs " +
                                std::to_string(game.away_ids.size()));
    }
    return game.home_ids.size();
}

void kf_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
             const GameStep& gs) {
    auto& v = std::get<Matrix>(st.cov);
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double eps = gs.coef.epsilon_t;
    const double s = cfg.model.scale_s;

    kern::scale_add(v.data(), m * m, beta * beta, 0.0);
    for (std::size_t i = 0; i < m; ++i) v(i, i) += eps;
    kern::scale(st.mu.data(), m, beta);

    const double z = beta * gs.z_sum / s + cfg.model.hfa_eta;
    const auto d = derivatives(cfg.model, z, gs.outcome);

    // w = Vbar x via signed row sums (Vbar is symmetric).
    std::vector<double> w(m, 0.0);
    for (auto id : game.home_ids) kern::axpy(w.data(), v.row(id), m, 1.0);
    for (auto id : game.away_ids) kern::axpy(w.data(), v.row(id), m, -1.0);
    double omega = 0.0;
    for (auto id : game.home_ids) omega += w[id];
    for (auto id : game.away_ids) omega -= w[id];

    const double den = guarded_denominator(s, d.hessian_neg_h, omega);
    kern::axpy(st.mu.data(), w.data(), m, s * d.gradient_g / den);

    // V = Vbar - u u' with u = sqrt(h/den) w; the symmetric form keeps the
    // stored matrix exactly symmetric under rounding.
    const double c = d.hessian_neg_h / den;
    if (c > 0.0) {
        kern::scale(w.data(), m, std::sqrt(c));
        for (std::size_t i = 0; i < m; ++i) kern::axpy(v.row(i), w.data(), m, -w[i]);
    }
}

void vskf_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
               const GameStep& gs) {
    auto& v = std::get<std::vector<double>>(st.cov);
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double s = cfg.model.scale_s;

    kern::scale_add(v.data(), m, beta * beta, gs.coef.epsilon_t);
    kern::scale(st.mu.data(), m, beta);

    const double z = beta * gs.z_sum / s + cfg.model.hfa_eta;
    const auto d = derivatives(cfg.model, z, gs.outcome);
    const double omega = participant_sum(game, v);
    const double den = guarded_denominator(s, d.hessian_neg_h, omega);

    const double mean_gain = s * d.gradient_g / den;
    for (auto id : game.home_ids) st.mu[id] += v[id] * mean_gain;
    for (auto id : game.away_ids) st.mu[id] -= v[id] * mean_gain;
    const double var_gain = d.hessian_neg_h / den;
    for (auto id : game.home_ids) v[id] *= 1.0 - v[id] * var_gain;
    for (auto id : game.away_ids) v[id] *= 1.0 - v[id] * var_gain;
}

void sskf_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
               const GameStep& gs) {
    auto& sc = std::get<ScalarCovariance>(st.cov);
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double s = cfg.model.scale_s;
    const auto group = static_cast<double>(balanced_group_size(game, cfg));

    const double v_bar = beta * beta * sc.v + gs.coef.epsilon_t;
    const double omega = 2.0 * group * v_bar;
    kern::scale(st.mu.data(), m, beta);

    const double z = beta * gs.z_sum / s + cfg.model.hfa_eta;
    const auto d = derivatives(cfg.model, z, gs.outcome);
    const double den = guarded_denominator(s, d.hessian_neg_h, omega);

    const double mean_gain = v_bar * s * d.gradient_g / den;
    for (auto id : game.home_ids) st.mu[id] += mean_gain;
    for (auto id : game.away_ids) st.mu[id] -= mean_gain;
    sc.v = v_bar * (1.0 - (omega / static_cast<double>(m)) * d.hessian_neg_h / den);
}

void fskf_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
               const GameStep& gs) {
    const double v_bar = std::get<FixedCovariance>(st.cov).v;
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double s = cfg.model.scale_s;
    const auto group = static_cast<double>(balanced_group_size(game, cfg));

    kern::scale(st.mu.data(), m, beta);
    const double z = beta * gs.z_sum / s + cfg.model.hfa_eta;
    const auto d = derivatives(cfg.model, z, gs.outcome);
    const double den = guarded_denominator(s, d.hessian_neg_h, 2.0 * group * v_bar);

    const double mean_gain = v_bar * s * d.gradient_g / den;
    for (auto id : game.home_ids) st.mu[id] += mean_gain;
    for (auto id : game.away_ids) st.mu[id] -= mean_gain;
}

void sg_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
             const GameStep& gs) {
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double s = cfg.model.scale_s;

    kern::scale(st.mu.data(), m, beta);
    const double z = beta * gs.z_sum / s + cfg.model.hfa_eta;
    const auto d = derivatives(cfg.model, z, gs.outcome);

    const double step = *cfg.step_K * s * d.gradient_g;
    for (auto id : game.home_ids) st.mu[id] += step;
    for (auto id : game.away_ids) st.mu[id] -= step;
}

void trueskill_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
                    const GameStep& gs) {
    auto& v = std::get<std::vector<double>>(st.cov);
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double sigma = *cfg.sigma;

    kern::scale_add(v.data(), m, beta * beta, gs.coef.epsilon_t);
    kern::scale(st.mu.data(), m, beta);

    const double omega = participant_sum(game, v);
    const double sigma_tilde = std::sqrt(sigma * sigma + omega);
    const double z = beta * gs.z_sum / sigma_tilde + cfg.model.hfa_eta;
    const auto d = derivatives(cfg.model, z, gs.outcome);

    const double mean_gain = d.gradient_g / sigma_tilde;
    for (auto id : game.home_ids) st.mu[id] += v[id] * mean_gain;
    for (auto id : game.away_ids) st.mu[id] -= v[id] * mean_gain;
    const double var_gain = d.hessian_neg_h / (sigma * sigma + omega);
    for (auto id : game.home_ids) v[id] *= 1.0 - v[id] * var_gain;
    for (auto id : game.away_ids) v[id] *= 1.0 - v[id] * var_gain;
}

void glicko_step(RatingState& st, const GameRecord& game, const EngineConfig& cfg,
                 const GameStep& gs) {
    if (game.home_ids.size() != 1 || game.away_ids.size() != 1) {
        throw std::domain_error("glicko is defined for two players, not groups");
    }
    auto& v = std::get<std::vector<double>>(st.cov);
    const std::size_t m = st.player_count();
    const double beta = gs.coef.beta_t;
    const double sigma = *cfg.sigma;

    kern::scale_add(v.data(), m, beta * beta, gs.coef.epsilon_t);
    kern::scale(st.mu.data(), m, beta);

    const std::uint32_t home = game.home_ids[0];
    const std::uint32_t away = game.away_ids[0];
    const double omega = v[home] + v[away];

    struct Update {
        double mu, var;
    };
    auto player_update = [&](std::uint32_t id, double sign) -> Update {
        const double opponent_var = omega - v[id];
        const double st2 = sigma * sigma + opponent_var * kGlickoA;
        const double sigma_tilde = std::sqrt(st2);
        const double z = beta * gs.z_sum / sigma_tilde + cfg.model.hfa_eta;
        const auto d = derivatives(cfg.model, z, gs.outcome);
        const double den = st2 + v[id] * d.hessian_neg_h;
        return {st.mu[id] + sign * v[id] * sigma_tilde * d.gradient_g / den,
                v[id] * st2 / den};
    };
    const Update uh = player_update(home, 1.0);
    const Update ua = player_update(away, -1.0);
    st.mu[home] = uh.mu;
    v[home] = uh.var;
    st.mu[away] = ua.mu;
    v[away] = ua.var;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::KF: return "kf";
        case Algorithm::VSKF: return "vskf";
        case Algorithm::SSKF: return "sskf";
        case Algorithm::FSKF: return "fskf";
        case Algorithm::SG: return "sg";
        case Algorithm::TrueSkill: return "trueskill";
        case Algorithm::Glicko: return "glicko";
        case Algorithm::Elo: return "elo";
    }
    return "unknown";
}

void EngineConfig::validate() const {
    model.validate();
    dynamics.validate();
    switch (algorithm) {
        case Algorithm::KF:
        case Algorithm::VSKF:
        case Algorithm::SSKF:
            require_field(*this, v0, "v0");
            forbid_field(*this, v_bar, "vbar");
            forbid_field(*this, step_K, "K");
            forbid_field(*this, sigma, "sigma");
            break;
        case Algorithm::FSKF:
            require_field(*this, v_bar, "vbar");
            forbid_field(*this, v0, "v0");
            forbid_field(*this, step_K, "K");
            forbid_field(*this, sigma, "sigma");
            break;
        case Algorithm::SG:
        case Algorithm::Elo:
            require_field(*this, step_K, "K");
            forbid_field(*this, v0, "v0");
            forbid_field(*this, v_bar, "vbar");
            forbid_field(*this, sigma, "sigma");
            break;
        case Algorithm::TrueSkill:
        case Algorithm::Glicko:
            require_field(*this, v0, "v0");
            require_field(*this, sigma, "sigma");
            forbid_field(*this, v_bar, "vbar");
            forbid_field(*this, step_K, "K");
            break;
    }
    if (algorithm == Algorithm::TrueSkill && model.kind != ModelKind::Thurston) {
        config_error(*this, "requires the thurston model");
    }
    if (algorithm == Algorithm::Glicko && model.kind != ModelKind::BradleyTerry) {
        config_error(*this, "requires the bradley-terry model");
    }
    if (algorithm == Algorithm::Elo && model.kind != ModelKind::BradleyTerry &&
        model.kind != ModelKind::OriginalElo) {
        config_error(*this, "requires the bradley-terry or original-elo model");
    }
    if (model.kind == ModelKind::OriginalElo && algorithm != Algorithm::SG &&
        algorithm != Algorithm::Elo) {
        config_error(*this, "the original-elo pseudo-model is gradient-only (SG/Elo)");
    }
}

double EngineConfig::prediction_scale() const {
    if (algorithm == Algorithm::TrueSkill || algorithm == Algorithm::Glicko) return *sigma;
    return model.scale_s;
}

std::optional<double> RatingState::variance_of(std::size_t m) const {
    if (std::holds_alternative<std::monostate>(cov)) return std::nullopt;
    if (const auto* full = std::get_if<Matrix>(&cov)) return (*full)(m, m);
    if (const auto* diag = std::get_if<std::vector<double>>(&cov)) return (*diag)[m];
    if (const auto* scalar = std::get_if<ScalarCovariance>(&cov)) return scalar->v;
    return std::get<FixedCovariance>(cov).v;
}

RatingState init(const EngineConfig& config, std::size_t player_count) {
    config.validate();
    if (player_count < 2) throw std::invalid_argument("need at least two players");
    RatingState st;
    st.mu.assign(player_count, 0.0);
    switch (config.algorithm) {
        case Algorithm::KF:
            st.cov = Matrix(player_count, *config.v0);
            break;
        case Algorithm::VSKF:
        case Algorithm::TrueSkill:
        case Algorithm::Glicko:
            st.cov = std::vector<double>(player_count, *config.v0);
            break;
        case Algorithm::SSKF:
            st.cov = ScalarCovariance{*config.v0};
            break;
        case Algorithm::FSKF:
            st.cov = FixedCovariance{*config.v_bar};
            break;
        case Algorithm::SG:
        case Algorithm::Elo:
            st.cov = std::monostate{};
            break;
    }
    return st;
}

void step_inplace(RatingState& state, const GameRecord& game, const EngineConfig& config) {
    const auto x = make_schedule_vector(game, state.player_count());
    GameStep gs;
    gs.coef = step_coefficients(config.dynamics, game.tau, state.tau);
    gs.z_sum = skill_difference(x, state.mu);
    gs.outcome = game.outcome;
    switch (config.algorithm) {
        case Algorithm::KF: kf_step(state, game, config, gs); break;
        case Algorithm::VSKF: vskf_step(state, game, config, gs); break;
        case Algorithm::SSKF: sskf_step(state, game, config, gs); break;
        case Algorithm::FSKF: fskf_step(state, game, config, gs); break;
        case Algorithm::SG:
        case Algorithm::Elo: sg_step(state, game, config, gs); break;
        case Algorithm::TrueSkill: trueskill_step(state, game, config, gs); break;
        case Algorithm::Glicko: glicko_step(state, game, config, gs); break;
    }
    state.t_index = game.t_index;
    state.tau = game.tau;
}

RatingState step(const RatingState& state, const GameRecord& game, const EngineConfig& config) {
    RatingState next = state;
    step_inplace(next, game, config);
    return next;
}

double predict_z(const RatingState& state, const GameRecord& game, const EngineConfig& config) {
    const auto x = make_schedule_vector(game, state.player_count());
    const auto coef = step_coefficients(config.dynamics, game.tau, state.tau);
    return coef.beta_t * skill_difference(x, state.mu) / config.prediction_scale() +
           config.model.hfa_eta;
}

void reset_players_inplace(RatingState& state, std::span<const std::uint32_t> player_ids,
                           const EngineConfig& config) {
    const std::size_t m = state.player_count();
    for (auto id : player_ids) {
        if (id >= m) throw std::domain_error("reset: player index out of range");
        state.mu[id] = 0.0;
    }
    if (auto* full = std::get_if<Matrix>(&state.cov)) {
        for (auto id : player_ids) {
            for (std::size_t j = 0; j < m; ++j) {
                (*full)(id, j) = 0.0;
                (*full)(j, id) = 0.0;
            }
            (*full)(id, id) = *config.v0;
        }
    } else if (auto* diag = std::get_if<std::vector<double>>(&state.cov)) {
        for (auto id : player_ids) (*diag)[id] = *config.v0;
    } else if (auto* scalar = std::get_if<ScalarCovariance>(&state.cov)) {
        const double fraction =
            static_cast<double>(player_ids.size()) / static_cast<double>(m);
        scalar->v += (*config.v0 - scalar->v) * fraction;
    }
    // Fixed-variance and mean-only engines reset the mean alone.
}

RatingState reset_players(const RatingState& state, std::span<const std::uint32_t> player_ids,
                          const EngineConfig& config) {
    RatingState next = state;
    reset_players_inplace(next, player_ids, config);
    return next;
}

}  // namespace ratekit
