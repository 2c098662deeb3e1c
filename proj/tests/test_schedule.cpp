#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ratekit/schedule.hpp"

using namespace ratekit;

TEST_CASE("combined scheduling vector, two-a-side example") {
    // Home {4,7}, away {3,10} in 1-based speak -> {3,6} / {2,9} internally.
    const std::array<std::uint32_t, 2> home{3, 6};
    const std::array<std::uint32_t, 2> away{2, 9};
    const auto x = make_schedule_vector(home, away, 10);
    const auto dense = x.dense();
    const std::vector<double> want{0, 0, -1, 1, 0, 0, 1, 0, 0, -1};
    CHECK(dense == want);

    double balance = 0.0;
    for (double v : dense) balance += v;
    CHECK(balance == 0.0);
}

TEST_CASE("singleton game and invalid index sets") {
    const std::array<std::uint32_t, 1> home{0};
    const std::array<std::uint32_t, 1> away{1};
    CHECK(make_schedule_vector(home, away, 2).dense() == std::vector<double>{1, -1});

    const std::array<std::uint32_t, 1> same{0};
    CHECK_THROWS_AS(make_schedule_vector(same, same, 2), std::domain_error);
    const std::array<std::uint32_t, 1> big{5};
    CHECK_THROWS_AS(make_schedule_vector(home, big, 2), std::domain_error);
    CHECK_THROWS_AS(make_schedule_vector(home, std::span<const std::uint32_t>{}, 2),
                    std::domain_error);
}

TEST_CASE("skill difference is the home-minus-away sum") {
    const std::array<std::uint32_t, 1> home{0};
    const std::array<std::uint32_t, 1> away{1};
    const auto x = make_schedule_vector(home, away, 2);
    const std::vector<double> mu{0.5, -0.5};
    CHECK(skill_difference(x, mu) == doctest::Approx(1.0));

    const std::vector<double> zeros(2, 0.0);
    CHECK(skill_difference(x, zeros) == 0.0);

    const std::array<std::uint32_t, 2> home10{3, 6};
    const std::array<std::uint32_t, 2> away10{2, 9};
    const auto x10 = make_schedule_vector(home10, away10, 10);
    std::vector<double> ramp(10);
    for (std::size_t m = 0; m < 10; ++m) ramp[m] = static_cast<double>(m + 1) / 10.0;
    CHECK(skill_difference(x10, ramp) == doctest::Approx(-0.2).epsilon(1e-14));
}

TEST_CASE("step coefficients follow the day gap") {
    const DynamicsParams params{0.998, 0.004};
    const auto one = step_coefficients(params, 5, 4);
    CHECK(one.beta_t == doctest::Approx(0.998).epsilon(1e-15));
    CHECK(one.epsilon_t == doctest::Approx(0.004).epsilon(1e-15));

    const auto same_day = step_coefficients(params, 4, 4);
    CHECK(same_day.beta_t == 1.0);
    CHECK(same_day.epsilon_t == 0.0);

    const auto two = step_coefficients(params, 6, 4);
    CHECK(two.beta_t == doctest::Approx(0.996004).epsilon(1e-12));
    CHECK(two.epsilon_t == doctest::Approx(0.008).epsilon(1e-15));

    CHECK_THROWS_AS(step_coefficients(params, 3, 4), std::domain_error);
}

TEST_CASE("coefficients compose across consecutive gaps") {
    const DynamicsParams params{0.97, 0.01};
    for (std::int64_t a : {0, 1, 3}) {
        for (std::int64_t b : {0, 2, 5}) {
            const auto ab = step_coefficients(params, a + b, 0);
            const auto first = step_coefficients(params, a, 0);
            const auto second = step_coefficients(params, a + b, a);
            CHECK(ab.beta_t == doctest::Approx(first.beta_t * second.beta_t).epsilon(1e-12));
            CHECK(ab.epsilon_t ==
                  doctest::Approx(first.epsilon_t + second.epsilon_t).epsilon(1e-12));
        }
    }
}

TEST_CASE("dynamics validation") {
    CHECK_THROWS_AS((DynamicsParams{0.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((DynamicsParams{1.2, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((DynamicsParams{1.0, -0.1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((DynamicsParams{1.0, 0.0}.validate()));
}
