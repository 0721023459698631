#pragma once

// Machine-readable claim reports: one row per checked quantity, with the
// pass verdict computed from the declared threshold/uncertainty at row
// construction (never post hoc). Output is bit-stable for fixed input.

#include <string>
#include <vector>

namespace bhp {

struct ReportRow {
  std::string scenario;
  std::string claim;     // anchor tag (see claim_anchor_table in scenarios.hpp)
  std::string quantity;  // short label of the measured value
  double measured = 0.0;
  double uncertainty = 0.0;  // statistical + numerical allowance; 0 when deterministic
  double threshold = 0.0;
  std::string comparison;  // ">=", "<=", ">", "near", "finite", "flag"
  bool pass = false;
  double runtime_s = 0.0;
};

/// Builds a row and evaluates the verdict from the declared comparison:
///   ">="    measured >= threshold - uncertainty
///   "<="    measured <= threshold + uncertainty
///   ">"     measured >  threshold (uncertainty ignored)
///   "near"  |measured - threshold| <= uncertainty
///   "finite" measured is finite (threshold ignored)
///   "flag"  measured == threshold exactly (boolean checks)
ReportRow make_row(std::string scenario, std::string claim, std::string quantity, double measured,
                   double uncertainty, double threshold, std::string comparison, double runtime_s);

enum class ReportFormat { csv, json };

/// Parses "csv" / "json".
ReportFormat parse_report_format(const std::string& s);

/// Fixed column order, floats rendered with 17 significant digits.
std::string render_report_csv(const std::vector<ReportRow>& rows);
std::string render_report_json(const std::vector<ReportRow>& rows);

/// %.17g rendering used across all text output.
std::string format_g17(double v);

/// Writes content to path atomically (temp file in the same directory, then
/// rename). Creates parent directories.
void write_text_atomic(const std::string& path, const std::string& content);

/// Renders and writes <dir>/<basename>.(csv|json); returns the full path.
std::string write_report(const std::vector<ReportRow>& rows, const std::string& dir,
                         const std::string& basename, ReportFormat format);

}  // namespace bhp
