#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ratekit {

// One game: 0-based participant indices, nondecreasing day stamp tau, and an
// ordinal outcome (0 away win, 1 home win for binary models; 0/1/2 for
// away-win/draw/home-win in ternary models).
struct GameRecord {
    std::int64_t t_index = 0;  // 1-based game counter
    std::int64_t tau = 0;      // day stamp
    std::vector<std::uint32_t> home_ids;
    std::vector<std::uint32_t> away_ids;
    int outcome = 0;
};

// Combined scheduling vector x_t = x_home - x_away, stored sparsely.
struct ScheduleVector {
    struct Entry {
        std::uint32_t index;
        double sign;  // +1 home, -1 away
    };
    std::vector<Entry> entries;
    std::size_t player_count = 0;

    std::vector<double> dense() const;
};

struct DynamicsParams {
    double beta = 1.0;     // per-day skill damping, in (0, 1]
    double epsilon = 0.0;  // per-day variance increase

    void validate() const;
};

struct StepCoefficients {
    double beta_t = 1.0;
    double epsilon_t = 0.0;
};

// Validates disjointness and range; throws std::domain_error otherwise.
ScheduleVector make_schedule_vector(std::span<const std::uint32_t> home_ids,
                                    std::span<const std::uint32_t> away_ids,
                                    std::size_t player_count);

ScheduleVector make_schedule_vector(const GameRecord& game, std::size_t player_count);

// x' mu, evaluated by sparse iteration.
double skill_difference(const ScheduleVector& x, std::span<const double> mu);

// beta_t = beta^(tau_now - tau_prev), epsilon_t = (tau_now - tau_prev) * epsilon.
StepCoefficients step_coefficients(const DynamicsParams& params, std::int64_t tau_now,
                                   std::int64_t tau_prev);

}  // namespace ratekit
