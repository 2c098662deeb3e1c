#pragma once

#include <span>
#include <vector>

#include "ratekit/models.hpp"
#include "ratekit/schedule.hpp"

// Forecast-quality scoring on empirical data: per-game log-scores, the
// initialization / converged score windows, the entropy baseline, and the
// frequency-based estimators of the home boost and draw parameter.

namespace ratekit {

struct OutcomeFrequencies {
    std::vector<double> f;  // indexed by outcome symbol

    void validate() const;
};

struct ScoreWindows {
    double ls_init = 0.0;
    double ls_final = 0.0;
    std::size_t t_init = 0;      // nominal window length, 4 * M
    bool init_truncated = false; // season shorter than the nominal window
};

// -log of the forecast probability of the realized outcome, natural log,
// with the forecast clamped away from 0 and 1.
double log_score(const ModelSpec& model, double z_pred, int y);

// First-window / second-half means of a per-game score series.
ScoreWindows score_windows(std::span<const double> per_game_scores, std::size_t team_count);

// -sum f log f with 0 log 0 = 0.
double entropy(const OutcomeFrequencies& freqs);

// Binary-game home boost: log10(f1 / f0).
double estimate_hfa_binary(const OutcomeFrequencies& freqs);

struct DavidsonParams {
    double eta = 0.0;
    double kappa = 0.0;
};

// Ternary-game estimators: eta = log10(f2/f0) / 2, kappa = f1 / sqrt(f0 f2).
DavidsonParams estimate_davidson_params(const OutcomeFrequencies& freqs);

OutcomeFrequencies count_frequencies(std::span<const GameRecord> games, int alphabet_size);

}  // namespace ratekit
