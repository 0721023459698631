#pragma once

// Named, config-driven experiments binding the engines to checkable claims.
// Each scenario is deterministic in (config, seed) and emits ReportRows whose
// verdicts come from thresholds declared here.

#include <string>
#include <vector>

#include "bhplab/config.hpp"
#include "bhplab/report.hpp"

namespace bhp {

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::vector<std::string> claims;  // anchor tags this scenario reports on
};

/// The shipped scenario registry.
const std::vector<ScenarioInfo>& scenario_registry();

/// Full vocabulary of claim anchor tags rows may carry.
const std::vector<std::string>& claim_anchor_table();
bool is_known_anchor(const std::string& tag);

/// Executes the named scenario; throws std::invalid_argument on an unknown
/// name and propagates engine failures tagged with the offending claim.
std::vector<ReportRow> run_scenario(const ScenarioConfig& cfg);

}  // namespace bhp
