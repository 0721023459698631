#include "bhplab/scenarios.hpp"

#include <algorithm>

#include "doctest.h"

using namespace bhp;

TEST_CASE("registry and claim anchors are consistent") {
  const auto& registry = scenario_registry();
  CHECK(registry.size() == 8);

  // every registry name has config defaults and vice versa
  for (const auto& info : registry)
    CHECK(std::find(scenario_names().begin(), scenario_names().end(), info.name) !=
          scenario_names().end());
  CHECK(scenario_names().size() == registry.size());

  // every claim tag a scenario may emit resolves to a known anchor
  for (const auto& info : registry) {
    CHECK_FALSE(info.claims.empty());
    for (const auto& claim : info.claims) CHECK(is_known_anchor(claim));
  }
  CHECK_FALSE(is_known_anchor("e:not-an-anchor"));
}

TEST_CASE("emitted rows carry registered claims and declared verdicts") {
  ScenarioConfig cfg = default_scenario_config("cone-exit");
  cfg.seed = 3;
  cfg.wos.n_paths = 20000;  // keep the unit test quick
  const auto rows = run_scenario(cfg);
  REQUIRE_FALSE(rows.empty());

  const auto& registry = scenario_registry();
  const auto info = std::find_if(registry.begin(), registry.end(),
                                 [](const ScenarioInfo& i) { return i.name == "cone-exit"; });
  REQUIRE(info != registry.end());
  for (const auto& row : rows) {
    CHECK(row.scenario == "cone-exit");
    CHECK(std::find(info->claims.begin(), info->claims.end(), row.claim) != info->claims.end());
    CHECK(is_known_anchor(row.claim));
    CHECK_FALSE(row.comparison.empty());
  }
}

TEST_CASE("same seed reproduces every measured value exactly") {
  ScenarioConfig cfg = default_scenario_config("masson");
  cfg.seed = 99;
  cfg.lattice.n_walks = 20000;
  const auto a = run_scenario(cfg);
  const auto b = run_scenario(cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].measured == b[i].measured);
    CHECK(a[i].pass == b[i].pass);
    CHECK(a[i].claim == b[i].claim);
  }
}

TEST_CASE("unknown scenario is rejected") {
  ScenarioConfig cfg;
  cfg.name = "nonsense";
  CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
}
