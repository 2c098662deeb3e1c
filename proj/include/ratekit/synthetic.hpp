#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ratekit/engines.hpp"
#include "ratekit/models.hpp"
#include "ratekit/schedule.hpp"

// Synthetic seasons: per-day damped random walks of the true skills, random
// perfect-matching scheduling, Thurston outcome sampling, plus the Monte
// Carlo experiment runner aggregating per-day divergence metrics.

namespace ratekit {

struct SyntheticConfig {
    std::size_t players = 20;  // M, even
    std::size_t days = 100;    // D
    double beta_hat = 0.998;
    std::optional<double> epsilon_hat;  // defaults to 1 - beta_hat^2
    double sigma_obs = 1.0;
    std::optional<std::int64_t> switch_day;  // fresh skills from this tau on
    std::size_t switch_count = 5;
    std::size_t replicates = 5000;
    std::uint64_t seed = 1;

    std::size_t games_per_day() const { return players / 2; }
    std::size_t total_games() const { return days * games_per_day(); }
    double effective_epsilon_hat() const {
        return epsilon_hat ? *epsilon_hat : 1.0 - beta_hat * beta_hat;
    }

    void validate() const;
};

struct SyntheticSeason {
    std::size_t players = 0;
    std::vector<double> skills;  // total_games x players, row-major
    std::vector<GameRecord> games;
    std::vector<double> true_probs;

    const double* skills_at(std::size_t t) const { return skills.data() + t * players; }
};

// Deterministic in (config.seed, replicate): each replicate is an
// independent substream of the configured seed.
SyntheticSeason generate_season(const SyntheticConfig& config, std::uint64_t replicate);

// D_KL between the Bernoulli(p_true) outcome law and the model's forecast at
// the predicted skill difference z_pred; forecasts are clamped away from 0/1.
double kl_metric(double p_true, const ModelSpec& model, double z_pred);

enum class MetricKind { KLDivergence, LogScore };

struct DayStats {
    double mean = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    std::size_t count = 0;
};

struct ExperimentResult {
    // [engine][day-1]
    std::vector<std::vector<DayStats>> per_engine;
};

// Runs every engine over the identical game stream of each replicate
// (common random numbers) and aggregates the per-game metric by day.
// Replicates run in parallel; results do not depend on thread count.
ExperimentResult run_experiment(const SyntheticConfig& config,
                                const std::vector<EngineConfig>& engines, MetricKind metric,
                                unsigned threads = 0);

}  // namespace ratekit
