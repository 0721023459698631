#include "bhplab/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

using namespace bhp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<ReportRow> sample_rows() {
  return {
      make_row("demo", "e:esc1", "u/v at x1=0.25", 0.051234567890123456, 0.002, 0.04, ">=", 1.5),
      make_row("demo", "tech_lemma1", "min gap", -5e-13, 0.0, -1e-12, ">=", 0.1),
      make_row("demo", "e:ss-bnd", "divergence flag", 1.0, 0.0, 1.0, "flag", 0.0),
  };
}

}  // namespace

TEST_CASE("verdicts follow the declared comparison") {
  CHECK(make_row("s", "c", "q", 0.5, 0.1, 0.55, ">=", 0).pass);        // 0.5 >= 0.45
  CHECK_FALSE(make_row("s", "c", "q", 0.5, 0.0, 0.55, ">=", 0).pass);
  CHECK(make_row("s", "c", "q", 0.5, 0.1, 0.45, "<=", 0).pass);
  CHECK(make_row("s", "c", "q", 1.04, 0.05, 1.0, "near", 0).pass);
  CHECK_FALSE(make_row("s", "c", "q", 1.06, 0.05, 1.0, "near", 0).pass);
  CHECK(make_row("s", "c", "q", 123.0, 0.0, 0.0, "finite", 0).pass);
  CHECK_FALSE(make_row("s", "c", "q", 1.0 / 0.0, 0.0, 0.0, "finite", 0).pass);
  CHECK(make_row("s", "c", "q", 1e-300, 0.0, 0.0, ">", 0).pass);
  CHECK_FALSE(make_row("s", "c", "q", 0.0, 0.0, 0.0, ">", 0).pass);
  CHECK_THROWS_AS(make_row("s", "c", "q", 0.0, 0.0, 0.0, "??", 0), std::invalid_argument);
}

TEST_CASE("CSV rendering is bit-stable and carries 17 significant digits") {
  const auto rows = sample_rows();
  const std::string a = render_report_csv(rows);
  const std::string b = render_report_csv(rows);
  CHECK(a == b);
  CHECK(a.find("0.051234567890123456") != std::string::npos);
  CHECK(a.substr(0, a.find('\n')) ==
        "scenario,claim,quantity,measured,uncertainty,threshold,comparison,pass,runtime_s");
}

TEST_CASE("empty row list renders a header-only CSV") {
  const std::string csv = render_report_csv({});
  CHECK(csv ==
        "scenario,claim,quantity,measured,uncertainty,threshold,comparison,pass,runtime_s\n");
}

TEST_CASE("json and csv encode identical values") {
  const auto rows = sample_rows();
  const auto doc = nlohmann::json::parse(render_report_json(rows));
  REQUIRE(doc["rows"].size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(doc["rows"][i]["measured"].get<double>() == rows[i].measured);
    CHECK(doc["rows"][i]["threshold"].get<double>() == rows[i].threshold);
    CHECK(doc["rows"][i]["pass"].get<bool>() == rows[i].pass);
    CHECK(doc["rows"][i]["claim"].get<std::string>() == rows[i].claim);
  }
}

TEST_CASE("write_report is atomic-by-rename and reproducible byte for byte") {
  namespace fs = std::filesystem;
  const std::string dir = (fs::temp_directory_path() / "bhplab_report_test").string();
  fs::remove_all(dir);
  const auto rows = sample_rows();
  const std::string p1 = write_report(rows, dir, "rows", ReportFormat::csv);
  const std::string first = slurp(p1);
  const std::string p2 = write_report(rows, dir, "rows", ReportFormat::csv);
  CHECK(p1 == p2);
  CHECK(slurp(p2) == first);
  CHECK_FALSE(fs::exists(p1 + ".tmp"));
  const std::string pj = write_report(rows, dir, "rows", ReportFormat::json);
  CHECK(fs::exists(pj));
  fs::remove_all(dir);
}

TEST_CASE("string fields are kept comma-free for CSV safety") {
  const ReportRow r = make_row("s", "c", "point (0.1, 0.2)", 1.0, 0.0, 0.0, "finite", 0.0);
  CHECK(r.quantity.find(',') == std::string::npos);
}
