#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ymlab/lattice_mc.hpp"

namespace ymlab {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"group-check", "weyl-check", "weyl-normalization", "single-bond",
                                              "approx",      "stability",  "genfun",             "scalar",
                                              "all"};
  return names;
}

struct RunConfig {
  std::string suite = "all";
  std::vector<int> ranks{1};
  std::vector<int> dims{2};
  int L = 4;
  Boundary boundary = Boundary::Free;
  std::vector<double> a_values{1.0};
  std::vector<double> g2_values{1.0};
  double g0_2 = 1.0;  // raised to the largest g2 when a config omits it
  MCParams mc;
  QuadratureSpec quad;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  bool timing = false;  // adds wall_time_s to records (breaks byte-identity)

  int lemma_samples = 10000;
  std::vector<double> source_strengths{0.1, 0.5};
  std::vector<int> source_counts{1, 2};
  std::vector<double> scalar_masses{0.0, 1.0};
  double kappa_u = 1.0;
  int limit_steps = 12;
};

// Throws ConfigInvalid naming the first offending field.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);
void validate(const RunConfig& c);
nlohmann::ordered_json to_json(const RunConfig& c);

std::vector<int> parse_int_list(const std::string& field, const std::string& text);
std::vector<double> parse_double_list(const std::string& field, const std::string& text);

}  // namespace ymlab
