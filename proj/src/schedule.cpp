#include "ratekit/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ratekit {

void DynamicsParams::validate() const {
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("dynamics beta must be in (0, 1]");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("dynamics epsilon must be nonnegative");
}

std::vector<double> ScheduleVector::dense() const {
    std::vector<double> x(player_count, 0.0);
    for (const auto& e : entries) x[e.index] = e.sign;
    return x;
}

ScheduleVector make_schedule_vector(std::span<const std::uint32_t> home_ids,
                                    std::span<const std::uint32_t> away_ids,
                                    std::size_t player_count) {
    if (home_ids.empty() || away_ids.empty()) {
        throw std::domain_error("a game needs at least one player on each side");
    }
    ScheduleVector x;
    x.player_count = player_count;
    x.entries.reserve(home_ids.size() + away_ids.size());
    std::vector<char> seen(player_count, 0);
    auto add = [&](std::uint32_t id, double sign) {
        if (id >= player_count) {
            throw std::domain_error("player index " + std::to_string(id) + " out of range (M=" +
                                    std::to_string(player_count) + ")");
        }
        if (seen[id]) {
            throw std::domain_error("player index " + std::to_string(id) +
                                    " appears on both sides or twice");
        }
        seen[id] = 1;
        x.entries.push_back({id, sign});
    };
    for (auto id : home_ids) add(id, 1.0);
    for (auto id : away_ids) add(id, -1.0);
    return x;
}

ScheduleVector make_schedule_vector(const GameRecord& game, std::size_t player_count) {
    return make_schedule_vector(game.home_ids, game.away_ids, player_count);
}

double skill_difference(const ScheduleVector& x, std::span<const double> mu) {
    double sum = 0.0;
    for (const auto& e : x.entries) sum += e.sign * mu[e.index];
    return sum;
}

StepCoefficients step_coefficients(const DynamicsParams& params, std::int64_t tau_now,
                                   std::int64_t tau_prev) {
    if (tau_now < tau_prev) {
        throw std::domain_error("time stamps must be nondecreasing: tau went from " +
                                std::to_string(tau_prev) + " to " + std::to_string(tau_now));
    }
    const auto gap = static_cast<double>(tau_now - tau_prev);
    StepCoefficients c;
    c.beta_t = gap == 0.0 ? 1.0 : std::pow(params.beta, gap);
    c.epsilon_t = gap * params.epsilon;
    return c;
}

}  // namespace ratekit
