#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ratekit/rng.hpp"

using namespace ratekit;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 test suite.
    const auto zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    const auto ones = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                        {0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    const auto pi = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                      {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
    Philox4x32 a(42, 7);
    Philox4x32 b(42, 7);
    Philox4x32 c(42, 8);
    Philox4x32 d(43, 7);
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c |= va != c.next_u64();
        differs_d |= va != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("uniform and bounded draws stay in range") {
    Philox4x32 rng(123, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto k = rng.next_below(7);
        CHECK(k < 7);
    }
    bool saw_all[7] = {};
    Philox4x32 rng2(5, 1);
    for (int i = 0; i < 1000; ++i) saw_all[rng2.next_below(7)] = true;
    for (bool seen : saw_all) CHECK(seen);
}

TEST_CASE("normal draws have the right first two moments") {
    Philox4x32 rng(99, 3);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.01);
    CHECK(std::fabs(var - 1.0) < 0.02);
}
