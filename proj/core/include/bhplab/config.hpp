#pragma once

// Scenario configuration: JSON-compatible text, fully validated (all errors
// reported, not first-error-only), defaults filled per scenario.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bhplab/geometry.hpp"
#include "bhplab/lattice.hpp"
#include "bhplab/simulate.hpp"

namespace bhp {

struct FdParams {
  int grid = 512;
  double tol = 1e-10;
};

struct QuadParams {
  double tol = 1e-8;
};

struct QhParams {
  int grid = 512;
  int stencil_range = 3;
};

struct LatticeParams {
  int N = 16;
  LatticeNorm norm = LatticeNorm::euclidean;
  int64_t n_walks = 100000;
};

struct ScenarioConfig {
  std::string name;
  int dimension = 2;
  uint64_t seed = 0;
  /// Cone half-angle; 0 selects the per-dimension default alpha_d / 2.
  double beta = 0.0;
  /// Allows beta above alpha_d (the bound reduction makes larger angles
  /// redundant for the claims, so they are rejected unless overridden).
  bool allow_beta_above_alpha = false;
  double outer_radius = 1.0;
  std::vector<ObstacleShape> obstacles;
  std::string engine;  // informational: wos | fd | lattice | quad | qhyp
  WosConfig wos{};
  FdParams fd{};
  QuadParams quad{};
  QhParams qhyp{};
  LatticeParams lattice{};
  std::vector<Point> points;
  std::string out_dir = "out";
  std::string format = "csv";
};

/// Per-scenario defaults (engine choice, path counts, grids). Throws on an
/// unknown scenario name.
ScenarioConfig default_scenario_config(const std::string& name);
const std::vector<std::string>& scenario_names();

struct ParseOutcome {
  std::optional<ScenarioConfig> config;  // engaged iff errors is empty
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

/// Parses and validates one scenario config. Collects every error (syntax
/// errors carry line/column; semantic errors carry the key path).
ParseOutcome parse_config_text(const std::string& text);
ParseOutcome parse_config_file(const std::string& path);

/// Canonical JSON echo of a config (parse(config_to_json(c)) round-trips).
std::string config_to_json(const ScenarioConfig& cfg);

struct BatchOutcome {
  std::vector<ScenarioConfig> scenarios;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

/// Batch file: {"scenarios": [<scenario config>, ...]}.
BatchOutcome parse_batch_file(const std::string& path);

}  // namespace bhp
