// bhplab command line: scenario execution, inequality grid checks, config
// validation. Exit codes: 0 = all report rows pass, 1 = at least one claim
// failed, 2 = usage or config error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bhplab/config.hpp"
#include "bhplab/kernel.hpp"
#include "bhplab/report.hpp"
#include "bhplab/scenarios.hpp"

namespace {

void print_rows(const std::vector<bhp::ReportRow>& rows) {
  for (const auto& r : rows) {
    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.scenario << " [" << r.claim << "] "
              << r.quantity << ": measured " << bhp::format_g17(r.measured) << " "
              << r.comparison << " " << bhp::format_g17(r.threshold);
    if (r.uncertainty != 0.0) std::cout << " (allowance " << bhp::format_g17(r.uncertainty) << ")";
    std::cout << "\n";
  }
}

int run_one(bhp::ScenarioConfig cfg, uint64_t seed, const std::string& out_dir,
            const std::string& format, bool& any_fail) {
  cfg.seed = seed;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (!format.empty()) cfg.format = format;
  const std::vector<bhp::ReportRow> rows = bhp::run_scenario(cfg);
  print_rows(rows);
  const std::string path = bhp::write_report(rows, cfg.out_dir, cfg.name + "_report",
                                             bhp::parse_report_format(cfg.format));
  std::cout << "report written to " << path << "\n";
  for (const auto& r : rows) any_fail = any_fail || !r.pass;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification lab for cone-exit harmonic functions, lattice walks and "
               "quasihyperbolic boundary machinery"};
  app.require_subcommand(1);

  // run
  std::string run_target, run_config, run_out, run_format;
  uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "run a scenario or a batch file");
  run->add_option("target", run_target, "scenario name or batch file path")->required();
  run->add_option("--config", run_config, "scenario config file (JSON)");
  run->add_option("--seed", run_seed, "RNG seed (required; no wall-clock seeding)")->required();
  run->add_option("--out", run_out, "output directory (default: config or 'out')");
  run->add_option("--format", run_format, "report format: csv or json");

  // list
  auto* list = app.add_subcommand("list", "print the scenario registry");

  // check-lemmas
  int dmax = 10;
  std::string lemmas_out = "out";
  auto* lemmas = app.add_subcommand("check-lemmas", "exhaustive inequality grid checks");
  lemmas->add_option("--dmax", dmax, "largest dimension to check (default 10)")
      ->check(CLI::Range(2, 10));
  lemmas->add_option("--out", lemmas_out, "output directory");

  // validate
  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "parse and validate a config without running");
  validate->add_option("--config", validate_config, "config file to validate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& info : bhp::scenario_registry()) {
        std::cout << info.name << "\n  " << info.description << "\n  claims:";
        for (const auto& c : info.claims) std::cout << " " << c;
        std::cout << "\n";
      }
      return 0;
    }

    if (lemmas->parsed()) {
      std::string csv = "lemma,d,grid_size,worst_gap,pass\n";
      bool ok = true;
      for (int d = 2; d <= dmax; ++d) {
        const double kappa = bhp::DimensionConstants::make(d).kappa_d;
        double worst = 1e300;
        const int grid1 = 100000;
        for (int i = 0; i < grid1; ++i)
          worst = std::min(worst, bhp::mirror_ratio_gap(d, kappa * i / (grid1 - 1.0)));
        const bool p1 = worst >= -1e-12;
        ok = ok && p1;
        csv += "tech_lemma1," + std::to_string(d) + "," + std::to_string(grid1) + "," +
               bhp::format_g17(worst) + "," + (p1 ? "1" : "0") + "\n";

        // gap to the bound 2 (negative values would violate the inequality)
        double worst2 = 1e300;
        const int grid2 = 1000;
        for (int i = 0; i < grid2; ++i)
          for (int j = 0; j < grid2; ++j)
            worst2 = std::min(worst2, 2.0 - bhp::mirrored_kernel_sum(d, kappa * i / (grid2 - 1.0),
                                                                     kappa * j / (grid2 - 1.0)));
        const bool p2 = worst2 >= -1e-12;
        ok = ok && p2;
        csv += "sum_reflections," + std::to_string(d) + "," + std::to_string(grid2 * grid2) + "," +
               bhp::format_g17(worst2) + "," + (p2 ? "1" : "0") + "\n";
      }
      const auto path = std::filesystem::path(lemmas_out) / "lemmas.csv";
      bhp::write_text_atomic(path.string(), csv);
      std::cout << (ok ? "all grids pass" : "GRID VIOLATION FOUND") << "; written to "
                << path.string() << "\n";
      return ok ? 0 : 1;
    }

    if (validate->parsed()) {
      const bhp::ParseOutcome outcome = bhp::parse_config_file(validate_config);
      if (!outcome.ok()) {
        for (const auto& e : outcome.errors) std::cerr << "error: " << e << "\n";
        return 2;
      }
      std::cout << bhp::config_to_json(*outcome.config);
      std::cout << "config ok\n";
      return 0;
    }

    // run
    bool any_fail = false;
    const bool is_scenario =
        std::find(bhp::scenario_names().begin(), bhp::scenario_names().end(), run_target) !=
        bhp::scenario_names().end();
    if (is_scenario) {
      bhp::ScenarioConfig cfg;
      if (!run_config.empty()) {
        const bhp::ParseOutcome outcome = bhp::parse_config_file(run_config);
        if (!outcome.ok()) {
          for (const auto& e : outcome.errors) std::cerr << "error: " << e << "\n";
          return 2;
        }
        cfg = *outcome.config;
        if (cfg.name != run_target) {
          std::cerr << "error: config names scenario '" << cfg.name << "' but '" << run_target
                    << "' was requested\n";
          return 2;
        }
      } else {
        cfg = bhp::default_scenario_config(run_target);
      }
      run_one(std::move(cfg), run_seed, run_out, run_format, any_fail);
    } else if (std::filesystem::exists(run_target)) {
      const bhp::BatchOutcome batch = bhp::parse_batch_file(run_target);
      if (!batch.ok()) {
        for (const auto& e : batch.errors) std::cerr << "error: " << e << "\n";
        return 2;
      }
      for (const auto& cfg : batch.scenarios)
        run_one(cfg, run_seed, run_out, run_format, any_fail);
      if (batch.scenarios.empty()) std::cout << "batch file lists no scenarios; empty report\n";
    } else {
      std::cerr << "error: '" << run_target
                << "' is neither a known scenario nor an existing batch file\n";
      return 2;
    }
    return any_fail ? 1 : 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}
