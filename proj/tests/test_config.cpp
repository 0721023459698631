#include "bhplab/config.hpp"

#include <algorithm>

#include "doctest.h"

using namespace bhp;

TEST_CASE("minimal config fills defaults and round-trips through the echo") {
  const ParseOutcome out = parse_config_text(R"({"name": "cone-exit", "seed": 7})");
  REQUIRE(out.ok());
  const ScenarioConfig& cfg = *out.config;
  CHECK(cfg.name == "cone-exit");
  CHECK(cfg.seed == 7);
  CHECK(cfg.dimension == 2);
  CHECK(cfg.wos.n_paths == 100000);  // scenario default
  CHECK(cfg.engine == "quad");

  const std::string echo = config_to_json(cfg);
  const ParseOutcome again = parse_config_text(echo);
  REQUIRE(again.ok());
  CHECK(config_to_json(*again.config) == echo);
}

TEST_CASE("beta above alpha_d is a semantic error naming the bound") {
  const ParseOutcome out =
      parse_config_text(R"({"name": "cone-exit", "dimension": 2, "beta": 0.3})");
  REQUIRE_FALSE(out.ok());
  REQUIRE(out.errors.size() == 1);
  CHECK(out.errors[0].find("alpha_d") != std::string::npos);
  CHECK(out.errors[0].find("beta") != std::string::npos);

  // the override flag lifts the restriction
  const ParseOutcome ok = parse_config_text(
      R"({"name": "cone-exit", "dimension": 2, "beta": 0.3, "allow_beta_above_alpha": true})");
  CHECK(ok.ok());
}

TEST_CASE("multiple errors are all reported, not first-error-only") {
  const ParseOutcome out = parse_config_text(
      R"({"name": "cone-exit", "beta": 0.3, "wos": {"safety_factor": 1.5}})");
  REQUIRE_FALSE(out.ok());
  CHECK(out.errors.size() == 2);
}

TEST_CASE("unknown keys are rejected at every level") {
  const ParseOutcome top = parse_config_text(R"({"name": "masson", "bogus": 1})");
  REQUIRE_FALSE(top.ok());
  CHECK(top.errors[0].find("bogus") != std::string::npos);

  const ParseOutcome nested =
      parse_config_text(R"({"name": "masson", "lattice": {"N": 16, "relax": 1.9}})");
  REQUIRE_FALSE(nested.ok());
  CHECK(nested.errors[0].find("lattice.relax") != std::string::npos);
}

TEST_CASE("syntax errors carry position information") {
  const ParseOutcome out = parse_config_text("{\"name\": \"masson\",\n  oops }");
  REQUIRE_FALSE(out.ok());
  CHECK(out.errors[0].find("syntax") != std::string::npos);
  CHECK(out.errors[0].find("line") != std::string::npos);
}

TEST_CASE("obstacles parse and validate") {
  const ParseOutcome out = parse_config_text(R"({
    "name": "bhp-uniform",
    "domain": {"obstacles": [
      {"type": "segment", "a": [-0.9, 0.0], "b": [0.0, 0.0], "thickness": 0.0},
      {"type": "ball", "center": [-0.4, 0.2], "radius": 0.1},
      {"type": "polyline", "vertices": [[-0.5, -0.1], [-0.2, 0.0], [0.0, 0.0]]}
    ]}
  })");
  REQUIRE(out.ok());
  CHECK(out.config->obstacles.size() == 3);

  const ParseOutcome bad = parse_config_text(R"({
    "name": "bhp-uniform",
    "domain": {"obstacles": [{"type": "ball", "center": [0, 0], "radius": -1}]}
  })");
  CHECK_FALSE(bad.ok());

  const ParseOutcome mismatch = parse_config_text(R"({
    "name": "counterexample-d3",
    "domain": {"obstacles": [{"type": "ball", "center": [0, 0], "radius": 0.1}]}
  })");
  CHECK_FALSE(mismatch.ok());  // d = 3 scenario, 2D center
}

TEST_CASE("unknown scenario names are rejected") {
  const ParseOutcome out = parse_config_text(R"({"name": "no-such-scenario"})");
  REQUIRE_FALSE(out.ok());
  CHECK_THROWS_AS(default_scenario_config("no-such-scenario"), std::invalid_argument);
}

TEST_CASE("every registered scenario name has defaults") {
  for (const auto& name : scenario_names()) {
    const ScenarioConfig cfg = default_scenario_config(name);
    CHECK(cfg.name == name);
    CHECK_FALSE(cfg.engine.empty());
  }
}
