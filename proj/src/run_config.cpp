#include "ymlab/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ymlab {

namespace {

using nlohmann::json;

template <class T>
std::vector<T> scalar_or_list(const json& j, const std::string& field, bool allow_empty = false) {
  std::vector<T> out;
  auto one = [&](const json& v) {
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigInvalid(field, "expected an integer");
    } else {
      if (!v.is_number()) throw ConfigInvalid(field, "expected a number");
    }
    out.push_back(v.get<T>());
  };
  if (j.is_array()) {
    if (j.empty() && !allow_empty) throw ConfigInvalid(field, "list must not be empty");
    for (const auto& v : j) one(v);
  } else {
    one(j);
  }
  return out;
}

template <class T>
T get_number(const json& j, const std::string& field) {
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ConfigInvalid(field, "expected an integer");
  } else {
    if (!j.is_number()) throw ConfigInvalid(field, "expected a number");
  }
  return j.get<T>();
}

QuadratureMethod parse_method(const std::string& s) {
  if (s == "gauss-legendre") return QuadratureMethod::TensorGaussLegendre;
  if (s == "quasi-random") return QuadratureMethod::QuasiRandom;
  if (s == "monte-carlo") return QuadratureMethod::MonteCarlo;
  throw ConfigInvalid("quadrature.method", "expected gauss-legendre, quasi-random or monte-carlo");
}

const char* method_name(QuadratureMethod m) {
  switch (m) {
    case QuadratureMethod::TensorGaussLegendre: return "gauss-legendre";
    case QuadratureMethod::QuasiRandom: return "quasi-random";
    default: return "monte-carlo";
  }
}

void parse_mc(const json& j, MCParams& mc) {
  if (!j.is_object()) throw ConfigInvalid("mc", "expected an object");
  for (const auto& [k, v] : j.items()) {
    const std::string f = "mc." + k;
    if (k == "sweeps") mc.sweeps = get_number<int>(v, f);
    else if (k == "thermalization") mc.thermalization = get_number<int>(v, f);
    else if (k == "epsilon") mc.epsilon = get_number<double>(v, f);
    else if (k == "chains") mc.chains = get_number<int>(v, f);
    else if (k == "grid_points") mc.grid_points = get_number<int>(v, f);
    else if (k == "hits") mc.hits = get_number<int>(v, f);
    else if (k == "batches") mc.batches = get_number<int>(v, f);
    else if (k == "threads") mc.threads = get_number<int>(v, f);
    else if (k == "beta_grid") mc.beta_grid = scalar_or_list<double>(v, f, true);
    else throw ConfigInvalid(f, "unknown field");
  }
}

void parse_quad(const json& j, QuadratureSpec& q) {
  if (!j.is_object()) throw ConfigInvalid("quadrature", "expected an object");
  for (const auto& [k, v] : j.items()) {
    const std::string f = "quadrature." + k;
    if (k == "method") {
      if (!v.is_string()) throw ConfigInvalid(f, "expected a string");
      q.method = parse_method(v.get<std::string>());
    } else if (k == "resolution") {
      q.resolution = get_number<int>(v, f);
    } else if (k == "samples") {
      q.samples = get_number<std::uint64_t>(v, f);
    } else if (k == "tolerance") {
      q.tolerance = get_number<double>(v, f);
    } else {
      throw ConfigInvalid(f, "unknown field");
    }
  }
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigInvalid("<root>", "config must be a JSON object");
  RunConfig c;
  bool g0_given = false;
  for (const auto& [k, v] : j.items()) {
    if (k == "suite") {
      if (!v.is_string()) throw ConfigInvalid(k, "expected a string");
      c.suite = v.get<std::string>();
    } else if (k == "N") {
      c.ranks = scalar_or_list<int>(v, k);
    } else if (k == "d") {
      c.dims = scalar_or_list<int>(v, k);
    } else if (k == "L") {
      c.L = get_number<int>(v, k);
    } else if (k == "boundary") {
      if (!v.is_string()) throw ConfigInvalid(k, "expected \"free\" or \"periodic\"");
      const std::string b = v.get<std::string>();
      if (b == "free") c.boundary = Boundary::Free;
      else if (b == "periodic") c.boundary = Boundary::Periodic;
      else throw ConfigInvalid(k, "expected \"free\" or \"periodic\"");
    } else if (k == "a") {
      c.a_values = scalar_or_list<double>(v, k);
    } else if (k == "g2") {
      c.g2_values = scalar_or_list<double>(v, k);
    } else if (k == "g0_2") {
      c.g0_2 = get_number<double>(v, k);
      g0_given = true;
    } else if (k == "mc") {
      parse_mc(v, c.mc);
    } else if (k == "quadrature") {
      parse_quad(v, c.quad);
    } else if (k == "out") {
      if (!v.is_string()) throw ConfigInvalid(k, "expected a string");
      c.out_dir = v.get<std::string>();
    } else if (k == "seed") {
      c.seed = get_number<std::uint64_t>(v, k);
    } else if (k == "timing") {
      if (!v.is_boolean()) throw ConfigInvalid(k, "expected a boolean");
      c.timing = v.get<bool>();
    } else if (k == "lemma_samples") {
      c.lemma_samples = get_number<int>(v, k);
    } else if (k == "source_strengths") {
      c.source_strengths = scalar_or_list<double>(v, k);
    } else if (k == "source_counts") {
      c.source_counts = scalar_or_list<int>(v, k);
    } else if (k == "scalar_masses") {
      c.scalar_masses = scalar_or_list<double>(v, k);
    } else if (k == "kappa_u") {
      c.kappa_u = get_number<double>(v, k);
    } else if (k == "limit_steps") {
      c.limit_steps = get_number<int>(v, k);
    } else {
      throw ConfigInvalid(k, "unknown field");
    }
  }
  // Without an explicit g0^2 the largest requested coupling sets it.
  if (!g0_given)
    for (double g2 : c.g2_values) c.g0_2 = std::max(c.g0_2, g2);
  validate(c);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("config", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigInvalid("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(j);
}

void validate(const RunConfig& c) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) throw ConfigInvalid("suite", "unknown suite " + c.suite);
  for (int n : c.ranks)
    if (n < 1 || n > 4) throw ConfigInvalid("N", "rank must lie in 1..4");
  for (int d : c.dims)
    if (d < 2 || d > 4) throw ConfigInvalid("d", "dimension must be 2, 3 or 4");
  if (c.L < 2 || c.L % 2 != 0) throw ConfigInvalid("L", "must be even and at least 2");
  for (double a : c.a_values)
    if (!(a > 0.0 && a <= 1.0)) throw ConfigInvalid("a", "lattice spacing must lie in (0, 1]");
  for (double g2 : c.g2_values)
    if (!(g2 > 0.0) || !std::isfinite(g2)) throw ConfigInvalid("g2", "coupling must be positive");
  const double g2_max = *std::max_element(c.g2_values.begin(), c.g2_values.end());
  if (!(c.g0_2 >= g2_max)) throw ConfigInvalid("g0_2", "must be at least the largest g2");
  try {
    c.mc.validate();
  } catch (const Error& e) {
    throw ConfigInvalid("mc", e.what());
  }
  if (c.mc.threads < 1) throw ConfigInvalid("mc.threads", "must be positive");
  try {
    c.quad.validate(1);
  } catch (const Error& e) {
    throw ConfigInvalid("quadrature", e.what());
  }
  if (c.out_dir.empty()) throw ConfigInvalid("out", "must not be empty");
  if (c.lemma_samples < 1) throw ConfigInvalid("lemma_samples", "must be positive");
  for (double j : c.source_strengths)
    if (!(std::abs(j) <= 3.0)) throw ConfigInvalid("source_strengths", "|J| must not exceed 3");
  for (int r : c.source_counts)
    if (r < 1 || r > 2) throw ConfigInvalid("source_counts", "r must be 1 or 2");
  for (double m : c.scalar_masses)
    if (!(m >= 0.0) || !std::isfinite(m)) throw ConfigInvalid("scalar_masses", "masses must be non-negative");
  if (!(c.kappa_u > 0.0)) throw ConfigInvalid("kappa_u", "must be positive");
  if (c.limit_steps < 2 || c.limit_steps > 20) throw ConfigInvalid("limit_steps", "must lie in 2..20");
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["suite"] = c.suite;
  j["N"] = c.ranks;
  j["d"] = c.dims;
  j["L"] = c.L;
  j["boundary"] = to_string(c.boundary);
  j["a"] = c.a_values;
  j["g2"] = c.g2_values;
  j["g0_2"] = c.g0_2;
  j["mc"] = {{"sweeps", c.mc.sweeps},   {"thermalization", c.mc.thermalization},
             {"epsilon", c.mc.epsilon}, {"chains", c.mc.chains},
             {"grid_points", c.mc.grid_points}, {"hits", c.mc.hits},
             {"batches", c.mc.batches}, {"threads", c.mc.threads},
             {"beta_grid", c.mc.beta_grid}};
  j["quadrature"] = {{"method", method_name(c.quad.method)},
                     {"resolution", c.quad.resolution},
                     {"samples", c.quad.samples},
                     {"tolerance", c.quad.tolerance}};
  j["out"] = c.out_dir;
  j["seed"] = c.seed;
  j["timing"] = c.timing;
  j["lemma_samples"] = c.lemma_samples;
  j["source_strengths"] = c.source_strengths;
  j["source_counts"] = c.source_counts;
  j["scalar_masses"] = c.scalar_masses;
  j["kappa_u"] = c.kappa_u;
  j["limit_steps"] = c.limit_steps;
  return j;
}

std::vector<int> parse_int_list(const std::string& field, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ConfigInvalid(field, "expected a comma-separated list of integers");
    }
    if (used != tok.size()) throw ConfigInvalid(field, "expected a comma-separated list of integers");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigInvalid(field, "list must not be empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ConfigInvalid(field, "expected a comma-separated list of numbers");
    }
    if (used != tok.size()) throw ConfigInvalid(field, "expected a comma-separated list of numbers");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigInvalid(field, "list must not be empty");
  return out;
}

}  // namespace ymlab
