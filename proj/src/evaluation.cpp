#include "ratekit/evaluation.hpp"

#include <cmath>
#include <stdexcept>

namespace ratekit {

namespace {
constexpr double kProbClamp = 1e-12;

double window_mean(std::span<const double> scores, std::size_t first, std::size_t last) {
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) sum += scores[i];
    return sum / static_cast<double>(last - first);
}
}  // namespace

void OutcomeFrequencies::validate() const {
    if (f.empty()) throw std::invalid_argument("no outcome frequencies");
    double sum = 0.0;
    for (double x : f) {
        if (!(x >= 0.0)) throw std::invalid_argument("frequencies must be nonnegative");
        sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("frequencies must sum to one");
    }
}

double log_score(const ModelSpec& model, double z_pred, int y) {
    double p = likelihood(model, z_pred, y);
    p = std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
    return -std::log(p);
}

ScoreWindows score_windows(std::span<const double> per_game_scores, std::size_t team_count) {
    const std::size_t total = per_game_scores.size();
    if (total < 2) throw std::invalid_argument("need at least two games to form score windows");
    ScoreWindows w;
    w.t_init = 4 * team_count;
    const std::size_t init_len = std::min(w.t_init, total);
    w.init_truncated = init_len < w.t_init;
    w.ls_init = window_mean(per_game_scores, 0, init_len);
    w.ls_final = window_mean(per_game_scores, total / 2, total);
    return w;
}

double entropy(const OutcomeFrequencies& freqs) {
    freqs.validate();
    double h = 0.0;
    for (double x : freqs.f) {
        if (x > 0.0) h -= x * std::log(x);
    }
    return h;
}

double estimate_hfa_binary(const OutcomeFrequencies& freqs) {
    freqs.validate();
    if (freqs.f.size() != 2) throw std::invalid_argument("binary estimator needs two outcomes");
    if (!(freqs.f[0] > 0.0) || !(freqs.f[1] > 0.0)) {
        throw std::domain_error("win/loss frequencies must both be positive");
    }
    return std::log10(freqs.f[1] / freqs.f[0]);
}

DavidsonParams estimate_davidson_params(const OutcomeFrequencies& freqs) {
    freqs.validate();
    if (freqs.f.size() != 3) throw std::invalid_argument("davidson estimator needs three outcomes");
    if (!(freqs.f[0] > 0.0) || !(freqs.f[2] > 0.0)) {
        throw std::domain_error("home/away win frequencies must both be positive");
    }
    DavidsonParams p;
    p.eta = 0.5 * std::log10(freqs.f[2] / freqs.f[0]);
    p.kappa = freqs.f[1] / std::sqrt(freqs.f[0] * freqs.f[2]);
    return p;
}

OutcomeFrequencies count_frequencies(std::span<const GameRecord> games, int alphabet_size) {
    if (games.empty()) throw std::invalid_argument("no games to count");
    OutcomeFrequencies freqs;
    freqs.f.assign(static_cast<std::size_t>(alphabet_size), 0.0);
    for (const auto& g : games) {
        if (g.outcome < 0 || g.outcome >= alphabet_size) {
            throw std::domain_error("game outcome outside the model alphabet");
        }
        freqs.f[static_cast<std::size_t>(g.outcome)] += 1.0;
    }
    for (auto& x : freqs.f) x /= static_cast<double>(games.size());
    return freqs;
}

}  // namespace ratekit
