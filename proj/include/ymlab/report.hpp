#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ymlab/run_config.hpp"

namespace ymlab {

using Json = nlohmann::ordered_json;

struct ReportRecord {
  std::string suite;
  std::string label;  // case name, unique within a suite run
  Json inputs = Json::object();
  Json values = Json::object();  // name -> number
  Json errors = Json::object();  // name -> 1-sigma or quadrature error
  std::optional<double> lhs;
  std::optional<double> rhs;
  bool verdict = false;
  std::optional<double> wall_time_s;
  std::uint64_t seed = 0;
  int resolution = 0;
  std::string code_version = YMLAB_VERSION;

  Json to_json() const;
  static ReportRecord from_json(const Json& j);
  bool operator==(const ReportRecord&) const = default;
};

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  std::string series;
};

struct SuiteResult {
  std::string suite;
  std::vector<ReportRecord> records;
  std::vector<PlotPoint> plot;

  std::vector<std::string> failing() const;
};

// %.17g; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

std::string to_jsonl(const SuiteResult& r);
std::string to_summary_csv(const SuiteResult& r);
std::string to_plot_csv(const SuiteResult& r);
void write_suite_files(const SuiteResult& r, const std::string& out_dir);

// Runs one named suite (never "all") and returns its records without writing.
SuiteResult compute_suite(const std::string& suite, const RunConfig& config);

struct RunOutcome {
  int exit_status = 0;
  std::vector<std::string> files;
  std::vector<std::string> failing;  // "suite/label"
};

// Computes and writes every suite named by config.suite ("all" expands).
// Each suite's files are written before the next starts. Throws
// ConfigInvalid on a bad config; failures are reported through the outcome.
RunOutcome run_suite(const RunConfig& config);
// Throws SuiteFailed listing the failing records when exit_status != 0.
void require_pass(const RunOutcome& outcome);

}  // namespace ymlab
