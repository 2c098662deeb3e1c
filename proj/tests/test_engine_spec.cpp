#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ratekit/engine_spec.hpp"

using namespace ratekit;

TEST_CASE("flag grammar round trips into engine configs") {
    const auto kf = parse_engine_spec("kf:eps=0.004,v0=1");
    CHECK(kf.config.algorithm == Algorithm::KF);
    CHECK(kf.config.model.kind == ModelKind::Thurston);  // default
    CHECK(kf.config.dynamics.epsilon == 0.004);
    CHECK(kf.config.v0 == 1.0);
    CHECK(kf.label == "kf");

    const auto vskf = parse_engine_spec("vskf:model=bt,v0=0.01,eps=3e-5,eta=0.08,label=nhl");
    CHECK(vskf.config.model.kind == ModelKind::BradleyTerry);
    CHECK(vskf.config.model.hfa_eta == 0.08);
    CHECK(vskf.config.dynamics.epsilon == doctest::Approx(3e-5));
    CHECK(vskf.label == "nhl");

    const auto davidson = parse_engine_spec("sg:model=davidson,kappa=0.63,eta=0.05,K=0.003");
    CHECK(davidson.config.model.kappa == 0.63);
    CHECK(davidson.config.step_K == 0.003);

    const auto glicko = parse_engine_spec("glicko:v0=0.5,eps=0.002,sigma=1");
    CHECK(glicko.config.model.kind == ModelKind::BradleyTerry);  // forced default
    CHECK(glicko.config.sigma == 1.0);

    const auto plain = parse_engine_spec("fskf:vbar=0.1");
    CHECK(plain.config.v_bar == 0.1);
    CHECK(plain.config.dynamics.beta == 1.0);
}

TEST_CASE("caller defaults apply when keys are absent") {
    EngineSpecDefaults defaults;
    defaults.model = ModelKind::Thurston;
    defaults.scale_s = 8.0;
    const auto spec = parse_engine_spec("vskf:v0=1,eps=0.004", defaults);
    CHECK(spec.config.model.kind == ModelKind::Thurston);
    CHECK(spec.config.model.scale_s == 8.0);

    const auto with_s = parse_engine_spec("vskf:v0=1,s=2", defaults);
    CHECK(with_s.config.model.scale_s == 2.0);
}

TEST_CASE("grammar and config errors") {
    CHECK_THROWS_AS(parse_engine_spec("nope:v0=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("vskf:v0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("vskf:v0=abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("vskf:wat=1,v0=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("vskf:"), std::invalid_argument);
    // Missing required / forbidden fields surface through validate().
    CHECK_THROWS_AS(parse_engine_spec("fskf"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("sg:v0=1,K=0.01"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("trueskill:model=bt,v0=1,sigma=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_engine_spec("vskf:model=original-elo,v0=1"), std::invalid_argument);
}

TEST_CASE("canonical spec strings parse back to the same config") {
    for (const char* text :
         {"kf:eps=0.004,v0=1", "vskf:model=bt,v0=0.01,eps=3e-5,eta=0.08",
          "sg:model=davidson,kappa=0.67,eta=0.1,K=0.015", "glicko:v0=0.5,eps=0.002,sigma=1",
          "fskf:model=bt,vbar=0.8", "trueskill:v0=1,eps=0.004,sigma=1"}) {
        const auto spec = parse_engine_spec(text);
        const auto canonical = engine_spec_string(spec.config);
        const auto reparsed = parse_engine_spec(canonical);
        CHECK(engine_spec_string(reparsed.config) == canonical);
        CHECK(reparsed.config.algorithm == spec.config.algorithm);
        CHECK(reparsed.config.model.kind == spec.config.model.kind);
    }
}
