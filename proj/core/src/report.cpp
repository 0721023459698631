#include "bhplab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace bhp {

namespace {

// string fields flow into CSV untouched, so keep them comma-free
std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

bool evaluate(const std::string& cmp, double measured, double uncertainty, double threshold) {
  if (cmp == ">=") return measured >= threshold - uncertainty;
  if (cmp == "<=") return measured <= threshold + uncertainty;
  if (cmp == ">") return measured > threshold;
  if (cmp == "near") return std::abs(measured - threshold) <= uncertainty;
  if (cmp == "finite") return std::isfinite(measured);
  if (cmp == "flag") return measured == threshold;
  throw std::invalid_argument("make_row: unknown comparison '" + cmp + "'");
}

}  // namespace

ReportRow make_row(std::string scenario, std::string claim, std::string quantity, double measured,
                   double uncertainty, double threshold, std::string comparison, double runtime_s) {
  ReportRow row;
  row.scenario = sanitize(std::move(scenario));
  row.claim = sanitize(std::move(claim));
  row.quantity = sanitize(std::move(quantity));
  row.measured = measured;
  row.uncertainty = uncertainty;
  row.threshold = threshold;
  row.comparison = comparison;
  row.pass = evaluate(comparison, measured, uncertainty, threshold);
  row.runtime_s = runtime_s;
  return row;
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + s + "' (expected csv or json)");
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "scenario,claim,quantity,measured,uncertainty,threshold,comparison,pass,runtime_s\n";
  for (const auto& r : rows) {
    out += r.scenario;
    out += ',';
    out += r.claim;
    out += ',';
    out += r.quantity;
    out += ',';
    out += format_g17(r.measured);
    out += ',';
    out += format_g17(r.uncertainty);
    out += ',';
    out += format_g17(r.threshold);
    out += ',';
    out += r.comparison;
    out += ',';
    out += r.pass ? "1" : "0";
    out += ',';
    out += format_g17(r.runtime_s);
    out += '\n';
  }
  return out;
}

std::string render_report_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["claim"] = r.claim;
    j["quantity"] = r.quantity;
    j["measured"] = r.measured;
    j["uncertainty"] = r.uncertainty;
    j["threshold"] = r.threshold;
    j["comparison"] = r.comparison;
    j["pass"] = r.pass;
    j["runtime_s"] = r.runtime_s;
    arr.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(arr);
  return doc.dump(2) + "\n";
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("write_text_atomic: cannot open " + tmp.string());
    f << content;
    if (!f.good()) throw std::runtime_error("write_text_atomic: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string write_report(const std::vector<ReportRow>& rows, const std::string& dir,
                         const std::string& basename, ReportFormat format) {
  const std::string ext = format == ReportFormat::csv ? ".csv" : ".json";
  const std::string path = (std::filesystem::path(dir) / (basename + ext)).string();
  write_text_atomic(path, format == ReportFormat::csv ? render_report_csv(rows)
                                                      : render_report_json(rows));
  return path;
}

}  // namespace bhp
