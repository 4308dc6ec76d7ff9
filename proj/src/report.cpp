#include "ymlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ymlab {

namespace {

// JSON has no inf/nan, so non-finite numbers go out as strings and come back
// through number_from_json.
Json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

Json sanitize(const Json& j) {
  if (j.is_number_float()) return number_to_json(j.get<double>());
  if (j.is_object() || j.is_array()) {
    Json out = j.is_object() ? Json::object() : Json::array();
    if (j.is_object())
      for (const auto& [k, v] : j.items()) out[k] = sanitize(v);
    else
      for (const auto& v : j) out.push_back(sanitize(v));
    return out;
  }
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const Json& j) {
  if (j.is_boolean()) return j.get<bool>() ? "1" : "0";
  if (j.is_number_integer() || j.is_number_unsigned()) return std::to_string(j.get<long long>());
  if (j.is_number() || j.is_string()) return format_double(number_from_json(j));
  return "";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json ReportRecord::to_json() const {
  Json j;
  j["suite"] = suite;
  j["case"] = label;
  j["inputs"] = sanitize(inputs);
  j["values"] = sanitize(values);
  j["errors"] = sanitize(errors);
  j["lhs"] = lhs ? number_to_json(*lhs) : Json(nullptr);
  j["rhs"] = rhs ? number_to_json(*rhs) : Json(nullptr);
  j["verdict"] = verdict ? "pass" : "fail";
  if (wall_time_s) j["wall_time_s"] = *wall_time_s;
  j["seed"] = seed;
  j["resolution"] = resolution;
  j["code_version"] = code_version;
  return j;
}

ReportRecord ReportRecord::from_json(const Json& j) {
  ReportRecord r;
  r.suite = j.at("suite").get<std::string>();
  r.label = j.at("case").get<std::string>();
  r.inputs = j.at("inputs");
  r.values = j.at("values");
  r.errors = j.at("errors");
  if (!j.at("lhs").is_null()) r.lhs = number_from_json(j.at("lhs"));
  if (!j.at("rhs").is_null()) r.rhs = number_from_json(j.at("rhs"));
  r.verdict = j.at("verdict").get<std::string>() == "pass";
  if (j.contains("wall_time_s")) r.wall_time_s = j.at("wall_time_s").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.resolution = j.at("resolution").get<int>();
  r.code_version = j.at("code_version").get<std::string>();
  return r;
}

std::vector<std::string> SuiteResult::failing() const {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (!r.verdict) out.push_back(suite + "/" + r.label);
  return out;
}

std::string to_jsonl(const SuiteResult& r) {
  std::string out;
  for (const auto& rec : r.records) {
    out += rec.to_json().dump();
    out += '\n';
  }
  return out;
}

std::string to_summary_csv(const SuiteResult& r) {
  std::ostringstream out;
  out << "index,suite,case,quantity,value,error,lhs,rhs,verdict\n";
  int index = 0;
  for (const auto& rec : r.records) {
    const std::string lhs = rec.lhs ? format_double(*rec.lhs) : "";
    const std::string rhs = rec.rhs ? format_double(*rec.rhs) : "";
    const char* verdict = rec.verdict ? "pass" : "fail";
    auto row = [&](const std::string& quantity, const std::string& value, const std::string& error) {
      out << index << ',' << csv_field(rec.suite) << ',' << csv_field(rec.label) << ',' << csv_field(quantity) << ','
          << value << ',' << error << ',' << lhs << ',' << rhs << ',' << verdict << '\n';
    };
    if (rec.values.empty()) row("", "", "");
    for (const auto& [k, v] : rec.values.items()) {
      const std::string err = rec.errors.contains(k) ? csv_number(rec.errors.at(k)) : "";
      row(k, csv_number(v), err);
    }
    ++index;
  }
  return out.str();
}

std::string to_plot_csv(const SuiteResult& r) {
  std::string out = "x,y,series\n";
  for (const auto& p : r.plot) out += format_double(p.x) + "," + format_double(p.y) + "," + csv_field(p.series) + "\n";
  return out;
}

void write_suite_files(const SuiteResult& r, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / (r.suite + ".jsonl"), to_jsonl(r));
  write_file(dir / (r.suite + "-summary.csv"), to_summary_csv(r));
  write_file(dir / (r.suite + "-plot.csv"), to_plot_csv(r));
}

RunOutcome run_suite(const RunConfig& config) {
  validate(config);
  std::vector<std::string> suites;
  if (config.suite == "all") {
    for (const auto& s : suite_names())
      if (s != "all" && s != "weyl-normalization") suites.push_back(s);
  } else {
    suites.push_back(config.suite);
  }
  RunOutcome outcome;
  for (const auto& s : suites) {
    SuiteResult r;
    try {
      r = compute_suite(s, config);
    } catch (const ConfigInvalid&) {
      throw;
    } catch (const Error& e) {
      // A module precondition failure still yields a report with one failing record.
      r.suite = s;
      ReportRecord rec;
      rec.suite = s;
      rec.label = "error";
      rec.values = Json::object();
      rec.inputs = Json{{"message", e.what()}};
      rec.seed = config.seed;
      rec.resolution = config.quad.resolution;
      r.records.push_back(rec);
    }
    write_suite_files(r, config.out_dir);
    const std::filesystem::path dir(config.out_dir);
    for (const char* suffix : {".jsonl", "-summary.csv", "-plot.csv"}) outcome.files.push_back((dir / (s + suffix)).string());
    for (auto& f : r.failing()) outcome.failing.push_back(std::move(f));
  }
  outcome.exit_status = outcome.failing.empty() ? 0 : 1;
  return outcome;
}

void require_pass(const RunOutcome& outcome) {
  if (outcome.exit_status == 0) return;
  std::string msg = std::to_string(outcome.failing.size()) + " failing record(s):";
  for (const auto& f : outcome.failing) msg += " " + f;
  throw SuiteFailed(msg);
}

}  // namespace ymlab
