#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "ratekit/engines.hpp"
#include "ratekit/kernels.hpp"
#include "ratekit/rng.hpp"

using namespace ratekit;

namespace {

std::vector<double> random_vector(Philox4x32& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_normal() * 3.0;
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("dispatched kernels match the scalar reference bit for bit") {
    Philox4x32 rng(2024, 0);
    // Odd lengths exercise the vector tails.
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{7},
                          std::size_t{20}, std::size_t{33}, std::size_t{400}}) {
        const auto base = random_vector(rng, n);
        const auto other = random_vector(rng, n);
        const double a = rng.next_normal();
        const double b = rng.next_normal();

        auto lhs = base;
        auto rhs = base;
        kern::ref::scale_add(lhs.data(), n, a, b);
        kern::scale_add(rhs.data(), n, a, b);
        CHECK(bitwise_equal(lhs, rhs));

        lhs = base;
        rhs = base;
        kern::ref::scale(lhs.data(), n, a);
        kern::scale(rhs.data(), n, a);
        CHECK(bitwise_equal(lhs, rhs));

        lhs = base;
        rhs = base;
        kern::ref::axpy(lhs.data(), other.data(), n, a);
        kern::axpy(rhs.data(), other.data(), n, a);
        CHECK(bitwise_equal(lhs, rhs));
    }
}

TEST_CASE("backend selection") {
    const auto best = kern::active_backend();
    CHECK(kern::set_backend(kern::Backend::Scalar));
    CHECK(kern::active_backend() == kern::Backend::Scalar);
    kern::reset_backend();
    CHECK(kern::active_backend() == best);
    CHECK(kern::backend_name(kern::Backend::Scalar) == std::string("scalar"));
#if defined(__x86_64__)
    // On hosts with AVX2 the best backend must be the SIMD one.
    if (kern::set_backend(kern::Backend::Avx2)) {
        CHECK(best == kern::Backend::Avx2);
        kern::reset_backend();
    }
#endif
    const bool both_simd =
        kern::set_backend(kern::Backend::Neon) && kern::set_backend(kern::Backend::Avx2);
    CHECK_FALSE(both_simd);
    kern::reset_backend();
}

TEST_CASE("engine runs are identical under scalar and SIMD backends") {
    EngineConfig kf;
    kf.algorithm = Algorithm::KF;
    kf.model.kind = ModelKind::BradleyTerry;
    kf.dynamics = {0.998, 0.004};
    kf.v0 = 1.0;

    EngineConfig vskf = kf;
    vskf.algorithm = Algorithm::VSKF;

    Philox4x32 rng(7, 1);
    const std::size_t m = 13;
    std::vector<GameRecord> games;
    for (int t = 1; t <= 60; ++t) {
        GameRecord g;
        g.t_index = t;
        g.tau = t / 4;
        const auto home = static_cast<std::uint32_t>(rng.next_below(m));
        auto away = static_cast<std::uint32_t>(rng.next_below(m - 1));
        if (away >= home) ++away;
        g.home_ids = {home};
        g.away_ids = {away};
        g.outcome = rng.next_double() < 0.5 ? 0 : 1;
        games.push_back(g);
    }

    for (const auto& cfg : {kf, vskf}) {
        REQUIRE(kern::set_backend(kern::Backend::Scalar));
        RatingState scalar_state = init(cfg, m);
        for (const auto& g : games) step_inplace(scalar_state, g, cfg);

        kern::reset_backend();
        RatingState simd_state = init(cfg, m);
        for (const auto& g : games) step_inplace(simd_state, g, cfg);

        CHECK(bitwise_equal(scalar_state.mu, simd_state.mu));
        CHECK(scalar_state.cov == simd_state.cov);
    }
    kern::reset_backend();
}
