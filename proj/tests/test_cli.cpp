// End-to-end checks of the installed CLI surface, driven via std::system.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& tag) {
  const fs::path out = fs::temp_directory_path() / ("bhplab_cli_" + tag + ".out");
  const std::string cmd = std::string(BHPLAB_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  res.stdout_text = ss.str();
  fs::remove(out);
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("list prints the registry") {
  const RunResult res = run_cli("list", "list");
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text.find("bhp-uniform") != std::string::npos);
  CHECK(res.stdout_text.find("masson") != std::string::npos);
  CHECK(res.stdout_text.find("counterexample-d3") != std::string::npos);
}

TEST_CASE("unknown subcommands and flags exit 2 with usage text") {
  CHECK(run_cli("frobnicate", "unk").exit_code == 2);
  CHECK(run_cli("run lemma-grid --seed 1 --bogus", "flag").exit_code == 2);
  CHECK(run_cli("run lemma-grid", "noseed").exit_code == 2);  // seed is mandatory
}

TEST_CASE("run lemma-grid twice produces identical output files") {
  const fs::path dir1 = fs::temp_directory_path() / "bhplab_cli_run1";
  const fs::path dir2 = fs::temp_directory_path() / "bhplab_cli_run2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  const RunResult r1 = run_cli("run lemma-grid --seed 1 --out " + dir1.string(), "run1");
  const RunResult r2 = run_cli("run lemma-grid --seed 1 --out " + dir2.string(), "run2");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir1 / "lemma-grid_report.csv") == slurp(dir2 / "lemma-grid_report.csv"));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("validate rejects beta above alpha_d without the override") {
  const fs::path cfg = fs::temp_directory_path() / "bhplab_cli_beta.json";
  {
    std::ofstream f(cfg);
    f << R"({"name": "cone-exit", "dimension": 2, "beta": 0.3})";
  }
  const RunResult bad = run_cli("validate --config " + cfg.string(), "val1");
  CHECK(bad.exit_code == 2);
  {
    std::ofstream f(cfg);
    f << R"({"name": "cone-exit", "dimension": 2, "beta": 0.3, "allow_beta_above_alpha": true})";
  }
  const RunResult ok = run_cli("validate --config " + cfg.string(), "val2");
  CHECK(ok.exit_code == 0);
  fs::remove(cfg);
}

TEST_CASE("empty batch file yields an empty report and exit 0") {
  const fs::path batch = fs::temp_directory_path() / "bhplab_cli_batch.json";
  {
    std::ofstream f(batch);
    f << R"({"scenarios": []})";
  }
  const RunResult res = run_cli("run " + batch.string() + " --seed 5", "batch");
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text.find("empty report") != std::string::npos);
  fs::remove(batch);
}

TEST_CASE("check-lemmas emits the lemma CSV schema") {
  const fs::path dir = fs::temp_directory_path() / "bhplab_cli_lemmas";
  fs::remove_all(dir);
  const RunResult res = run_cli("check-lemmas --dmax 3 --out " + dir.string(), "lem");
  CHECK(res.exit_code == 0);
  const std::string csv = slurp(dir / "lemmas.csv");
  CHECK(csv.rfind("lemma,d,grid_size,worst_gap,pass\n", 0) == 0);
  CHECK(csv.find("tech_lemma1,2,") != std::string::npos);
  CHECK(csv.find("sum_reflections,3,") != std::string::npos);
  fs::remove_all(dir);
}
