#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ymlab/report.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> d, L, N, a, g2, out, boundary;
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

void add_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "JSON run configuration");
  cmd->add_option("--d", o.d, "dimension list, e.g. 2,3");
  cmd->add_option("--L", o.L, "lattice extent (even)");
  cmd->add_option("--N", o.N, "group rank list, e.g. 1,2");
  cmd->add_option("--a", o.a, "lattice spacing list");
  cmd->add_option("--g2", o.g2, "coupling list");
  cmd->add_option("--boundary", o.boundary, "free or periodic");
  cmd->add_option("--seed", o.seed, "root seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--timing", o.timing, "record wall time per case");
}

ymlab::RunConfig build_config(const std::string& suite, const Overrides& o) {
  using namespace ymlab;
  nlohmann::json j = nlohmann::json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigInvalid("config", "cannot open " + o.config);
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigInvalid("config", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigInvalid("<root>", "config must be a JSON object");
  }
  j["suite"] = suite;
  if (o.d) j["d"] = parse_int_list("d", *o.d);
  if (o.L) {
    const auto v = parse_int_list("L", *o.L);
    if (v.size() != 1) throw ConfigInvalid("L", "expected a single integer");
    j["L"] = v.front();
  }
  if (o.N) j["N"] = parse_int_list("N", *o.N);
  if (o.a) j["a"] = parse_double_list("a", *o.a);
  if (o.g2) j["g2"] = parse_double_list("g2", *o.g2);
  if (o.boundary) j["boundary"] = *o.boundary;
  if (o.seed) j["seed"] = *o.seed;
  if (o.out) j["out"] = *o.out;
  if (o.timing) j["timing"] = true;
  return parse_run_config(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice gauge stability checks: quadrature, Monte Carlo and free-field suites"};
  app.set_version_flag("--version", std::string(YMLAB_VERSION));
  app.require_subcommand(1);
  Overrides o;
  for (const auto& name : ymlab::suite_names()) add_flags(app.add_subcommand(name, "run the " + name + " suite"), o);

  CLI11_PARSE(app, argc, argv);
  const std::string suite = app.get_subcommands().front()->get_name();

  try {
    const ymlab::RunConfig config = build_config(suite, o);
    const ymlab::RunOutcome outcome = ymlab::run_suite(config);
    for (const auto& f : outcome.files) std::cout << "wrote " << f << '\n';
    ymlab::require_pass(outcome);
    std::cout << "all verdicts pass\n";
    return 0;
  } catch (const ymlab::ConfigInvalid& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const ymlab::SuiteFailed& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const ymlab::Error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
}
