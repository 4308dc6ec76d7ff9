#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ymlab/errors.hpp"
#include "ymlab/report.hpp"

using namespace ymlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ymlab-test-" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("odd L is rejected naming the field") {
  try {
    parse_run_config(nlohmann::json{{"suite", "stability"}, {"L", 5}});
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.field() == "L");
  }
}

TEST_CASE("other malformed configs") {
  auto field_of = [](const nlohmann::json& j) {
    try {
      parse_run_config(j);
    } catch (const ConfigInvalid& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of({{"suite", "nope"}}) == "suite");
  CHECK(field_of({{"colour", 1}}) == "colour");
  CHECK(field_of({{"N", {1, 9}}}) == "N");
  CHECK(field_of({{"a", 1.5}}) == "a");
  CHECK(field_of({{"g2", {0.5, 2.0}}, {"g0_2", 1.0}}) == "g0_2");
  CHECK(parse_run_config({{"g2", {0.5, 2.0}}}).g0_2 == 2.0);
  CHECK(field_of({{"boundary", "twisted"}}) == "boundary");
  CHECK(field_of({{"mc", {{"sweeps", "many"}}}}) == "mc.sweeps");
  CHECK(field_of({{"quadrature", {{"method", "simpson"}}}}) == "quadrature.method");
  CHECK(field_of({{"suite", "scalar"}}) == "<none>");
}

TEST_CASE("config round-trips through JSON") {
  const RunConfig c = parse_run_config({{"suite", "approx"}, {"N", {1, 2}}, {"d", 4}, {"a", {1.0, 0.5}}, {"seed", 99}});
  const RunConfig back = parse_run_config(nlohmann::json::parse(to_json(c).dump()));
  CHECK(to_json(back).dump() == to_json(c).dump());
  CHECK(back.ranks == std::vector<int>{1, 2});
  CHECK(back.seed == 99u);
}

TEST_CASE("records round-trip without loss") {
  ReportRecord r;
  r.suite = "approx";
  r.label = "x";
  r.inputs = Json{{"N", 2}};
  r.values = Json{{"v", 0.1 + 0.2}, {"big", std::numeric_limits<double>::infinity()}};
  r.errors = Json{{"v", 1e-300}};
  r.lhs = 1.0 / 3.0;
  r.verdict = true;
  r.seed = 123456789012345ull;
  r.resolution = 96;
  const ReportRecord back = ReportRecord::from_json(Json::parse(r.to_json().dump()));
  CHECK(back.values["v"].get<double>() == 0.1 + 0.2);
  CHECK(back.lhs == r.lhs);
  CHECK(!back.rhs);
  CHECK(back.seed == r.seed);
  CHECK(back.to_json().dump() == r.to_json().dump());
}

TEST_CASE("floats are written with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("weyl-normalization over three ranks passes with three records") {
  RunConfig c;
  c.suite = "weyl-normalization";
  c.ranks = {1, 2, 3};
  c.out_dir = scratch("weyl").string();
  const RunOutcome o = run_suite(c);
  CHECK(o.exit_status == 0);
  CHECK_NOTHROW(require_pass(o));
  const std::string jsonl = slurp(std::filesystem::path(c.out_dir) / "weyl-normalization.jsonl");
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 3);
  const std::string csv = slurp(std::filesystem::path(c.out_dir) / "weyl-normalization-summary.csv");
  CHECK(csv.rfind("index,suite,case,quantity,value,error,lhs,rhs,verdict\n", 0) == 0);
  CHECK(slurp(std::filesystem::path(c.out_dir) / "weyl-normalization-plot.csv").rfind("x,y,series\n", 0) == 0);
  std::istringstream lines(jsonl);
  std::string line;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    CHECK(j["code_version"] == YMLAB_VERSION);
    CHECK(j.contains("seed"));
    CHECK(j["resolution"] == 96);
    CHECK(!j.contains("wall_time_s"));
  }
}

TEST_CASE("stability record brackets the Monte Carlo value") {
  RunConfig c;
  c.suite = "stability";
  c.dims = {2};
  c.L = 4;
  c.ranks = {1};
  c.out_dir = scratch("stability").string();
  const SuiteResult r = compute_suite("stability", c);
  REQUIRE(r.records.size() == 1);
  const ReportRecord& rec = r.records.front();
  CHECK(rec.verdict);
  CHECK(rec.values.contains("log_z"));
  CHECK(*rec.lhs <= *rec.rhs);
}

TEST_CASE("failing records make the run fail") {
  RunConfig c;
  c.suite = "stability";
  c.dims = {4};
  c.L = 4;  // Monte Carlo in d = 4 needs L = 2
  c.out_dir = scratch("fail").string();
  const RunOutcome o = run_suite(c);
  CHECK(o.exit_status != 0);
  CHECK(o.failing.size() == 1);
  CHECK_THROWS_AS(require_pass(o), SuiteFailed);
}

TEST_CASE("timing adds wall time only when asked") {
  RunConfig c;
  c.suite = "weyl-normalization";
  c.timing = true;
  const SuiteResult r = compute_suite("weyl-normalization", c);
  CHECK(r.records.front().wall_time_s.has_value());
}
