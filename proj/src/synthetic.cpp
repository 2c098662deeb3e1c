#include "ratekit/synthetic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ratekit/evaluation.hpp"
#include "ratekit/kernels.hpp"
#include "ratekit/normal.hpp"
#include "ratekit/rng.hpp"

namespace ratekit {

namespace {

constexpr double kProbClamp = 1e-12;

// Substream purposes within one replicate.
enum : std::uint64_t { kStreamSkills = 0, kStreamSchedule = 1, kStreamOutcomes = 2 };

std::uint64_t stream_id(std::uint64_t replicate, std::uint64_t purpose) {
    return (purpose << 48) | replicate;
}

double clamp_prob(double p) {
    return std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::uint64_t fnv1a_update(std::uint64_t hash, std::uint64_t value) {
    constexpr std::uint64_t kPrime = 1099511628211ull;
    for (int i = 0; i < 8; ++i) {
        hash ^= (value >> (8 * i)) & 0xff;
        hash *= kPrime;
    }
    return hash;
}

std::uint64_t game_checksum(std::uint64_t hash, const GameRecord& g) {
    hash = fnv1a_update(hash, static_cast<std::uint64_t>(g.t_index));
    hash = fnv1a_update(hash, static_cast<std::uint64_t>(g.tau));
    for (auto id : g.home_ids) hash = fnv1a_update(hash, id);
    for (auto id : g.away_ids) hash = fnv1a_update(hash, id);
    hash = fnv1a_update(hash, static_cast<std::uint64_t>(g.outcome));
    return hash;
}

}  // namespace

void SyntheticConfig::validate() const {
    if (players < 2 || players % 2 != 0) {
        throw std::invalid_argument("player count must be even and at least 2");
    }
    if (days == 0) throw std::invalid_argument("need at least one day");
    if (!(beta_hat > 0.0) || beta_hat > 1.0) {
        throw std::invalid_argument("beta_hat must be in (0, 1]");
    }
    if (!(effective_epsilon_hat() >= 0.0)) {
        throw std::invalid_argument("epsilon_hat must be nonnegative");
    }
    if (!(sigma_obs > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (switch_day) {
        if (*switch_day <= 0 || static_cast<std::size_t>(*switch_day) >= days) {
            throw std::invalid_argument("switch day must fall inside the season");
        }
        if (switch_count > players) {
            throw std::invalid_argument("cannot switch more players than exist");
        }
    }
    if (replicates == 0) throw std::invalid_argument("need at least one replicate");
}

SyntheticSeason generate_season(const SyntheticConfig& config, std::uint64_t replicate) {
    config.validate();
    const std::size_t m = config.players;
    const std::size_t j = config.games_per_day();
    const double walk_sd = std::sqrt(config.effective_epsilon_hat());

    Philox4x32 skill_rng(config.seed, stream_id(replicate, kStreamSkills));
    Philox4x32 schedule_rng(config.seed, stream_id(replicate, kStreamSchedule));
    Philox4x32 outcome_rng(config.seed, stream_id(replicate, kStreamOutcomes));

    SyntheticSeason season;
    season.players = m;
    season.skills.reserve(config.total_games() * m);
    season.games.reserve(config.total_games());
    season.true_probs.reserve(config.total_games());

    std::vector<double> theta(m);
    for (auto& th : theta) th = skill_rng.next_normal();

    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);

    std::int64_t t_index = 0;
    for (std::size_t day = 0; day < config.days; ++day) {
        if (day > 0) {
            for (auto& th : theta) {
                th = config.beta_hat * th + walk_sd * skill_rng.next_normal();
            }
        }
        if (config.switch_day && static_cast<std::int64_t>(day) == *config.switch_day) {
            for (std::size_t p = 0; p < config.switch_count; ++p) {
                theta[p] = skill_rng.next_normal();
            }
        }

        // Uniform random perfect matching: shuffle, pair consecutive.
        for (std::size_t k = m - 1; k > 0; --k) {
            const auto swap_with = static_cast<std::size_t>(schedule_rng.next_below(k + 1));
            std::swap(order[k], order[swap_with]);
        }

        for (std::size_t g = 0; g < j; ++g) {
            GameRecord game;
            game.t_index = ++t_index;
            game.tau = static_cast<std::int64_t>(day);
            game.home_ids = {order[2 * g]};
            game.away_ids = {order[2 * g + 1]};
            const double z = theta[order[2 * g]] - theta[order[2 * g + 1]];
            const double p_home = norm_cdf(z / config.sigma_obs);
            game.outcome = outcome_rng.next_double() < p_home ? 1 : 0;
            season.true_probs.push_back(p_home);
            season.games.push_back(std::move(game));
            season.skills.insert(season.skills.end(), theta.begin(), theta.end());
        }
    }
    return season;
}

double kl_metric(double p_true, const ModelSpec& model, double z_pred) {
    if (!(p_true > 0.0) || !(p_true < 1.0)) {
        throw std::domain_error("kl metric needs a true probability strictly inside (0, 1)");
    }
    const double q1 = clamp_prob(likelihood(model, z_pred, 1));
    const double q0 = clamp_prob(likelihood(model, z_pred, 0));
    return p_true * std::log(p_true / q1) + (1.0 - p_true) * std::log((1.0 - p_true) / q0);
}

ExperimentResult run_experiment(const SyntheticConfig& config,
                                const std::vector<EngineConfig>& engines, MetricKind metric,
                                unsigned threads) {
    config.validate();
    if (engines.empty()) throw std::invalid_argument("need at least one engine");
    for (const auto& e : engines) e.validate();

    const std::size_t n_engines = engines.size();
    const std::size_t games_per_day = config.games_per_day();
    const std::size_t per_day = config.replicates * games_per_day;

    // values[engine][day-major slot]; slot = replicate * J + game-of-day, so
    // worker threads write disjoint slots and the reduction order is fixed.
    std::vector<std::vector<double>> values(n_engines,
                                            std::vector<double>(config.days * per_day, 0.0));

    std::vector<std::uint32_t> switch_ids(config.switch_day ? config.switch_count : 0);
    std::iota(switch_ids.begin(), switch_ids.end(), 0u);

    auto run_replicate = [&](std::size_t rep) {
        const SyntheticSeason season = generate_season(config, rep);
        std::vector<std::uint64_t> checksums(n_engines, 1469598103934665603ull);
        for (std::size_t e = 0; e < n_engines; ++e) {
            const EngineConfig& cfg = engines[e];
            RatingState state = init(cfg, config.players);
            bool switched = !config.switch_day;
            for (std::size_t t = 0; t < season.games.size(); ++t) {
                const GameRecord& game = season.games[t];
                if (!switched && game.tau >= *config.switch_day) {
                    reset_players_inplace(state, switch_ids, cfg);
                    switched = true;
                }
                const double z = predict_z(state, game, cfg);
                double value;
                if (metric == MetricKind::KLDivergence) {
                    value = kl_metric(season.true_probs[t], cfg.model, z);
                } else {
                    value = log_score(cfg.model, z, game.outcome);
                }
                const auto day = static_cast<std::size_t>(game.tau);
                const std::size_t game_of_day = t % games_per_day;
                values[e][day * per_day + rep * games_per_day + game_of_day] = value;
                checksums[e] = game_checksum(checksums[e], game);
                step_inplace(state, game, cfg);
            }
        }
        // Common random numbers: every engine must have consumed the same stream.
        for (std::size_t e = 1; e < n_engines; ++e) {
            if (checksums[e] != checksums[0]) {
                throw std::logic_error("engines consumed different game streams");
            }
        }
    };

    unsigned n_threads = threads;
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(config.replicates));
    if (n_threads <= 1) {
        for (std::size_t rep = 0; rep < config.replicates; ++rep) run_replicate(rep);
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t rep = next.fetch_add(1);
                    if (rep >= config.replicates || failed.load()) return;
                    try {
                        run_replicate(rep);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        failed.store(true);
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    ExperimentResult result;
    result.per_engine.assign(n_engines, std::vector<DayStats>(config.days));
    std::vector<double> sorted(per_day);
    for (std::size_t e = 0; e < n_engines; ++e) {
        for (std::size_t day = 0; day < config.days; ++day) {
            const double* slice = values[e].data() + day * per_day;
            double sum = 0.0;
            for (std::size_t i = 0; i < per_day; ++i) sum += slice[i];
            sorted.assign(slice, slice + per_day);
            std::sort(sorted.begin(), sorted.end());
            DayStats& stats = result.per_engine[e][day];
            stats.count = per_day;
            stats.mean = sum / static_cast<double>(per_day);
            stats.median = quantile_sorted(sorted, 0.5);
            stats.q3 = quantile_sorted(sorted, 0.75);
        }
    }
    return result;
}

}  // namespace ratekit
