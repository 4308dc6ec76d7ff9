// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ymlab/report.hpp"
#include "ymlab/scalar_free.hpp"

using namespace ymlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double bessel_i0_scaled(double beta) {
  // e^{-2 beta} I_0(2 beta) from the power series of I_0.
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= (beta / k) * (beta / k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::exp(-2.0 * beta) * sum;
}

Outcome weyl_normalization() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double v = weyl_integrate([](std::span<const double>) { return 1.0; }, GroupSpec(n)).value;
    worst = std::max(worst, std::abs(v - 1.0));
  }
  return {worst <= 1e-9, "max |I - 1| = " + fmt("%.2e", worst)};
}

Outcome ensemble_constants_oracle() {
  double worst = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 2; ++n) {
    const GroupSpec g(n);
    const EnsembleConstants c = ensemble_constants(g);
    worst = std::max(worst, std::abs(i_beta(2, inf, g).value / c.gaussian_unitary - 1.0));
    worst = std::max(worst, std::abs(i_beta(4, inf, g).value / c.gaussian_symplectic - 1.0));
  }
  return {worst < 1e-6, "max relative error " + fmt("%.2e", worst)};
}

Outcome u1_bessel() {
  double worst = 0.0;
  for (double beta : {0.1, 1.0, 10.0})
    worst = std::max(worst, std::abs(z_upper(beta, GroupSpec(1)).value / bessel_i0_scaled(beta) - 1.0));
  return {worst <= 1e-8, "max relative error " + fmt("%.2e", worst)};
}

Outcome single_bond_sandwich() {
  int violations = 0, cases = 0;
  for (double a : {1.0, 0.5, 0.1, 0.01}) {
    for (double g2 : {0.1, 1.0}) {
      for (int n : {1, 2}) {
        for (int d : {2, 3, 4}) {
          CouplingSpec k;
          k.d = d;
          k.a = a;
          k.g2 = g2;
          k.g0_2 = 1.0;
          const GroupSpec g(n);
          const BoundConstants bc = bound_constants(k, g);
          const double s = std::pow(k.beta(), 0.5 * n * n);
          const double up = s * z_upper(k.beta(), g).value;
          const double lo = s * z_lower(k.beta(), d, g).value;
          // For N = 1 the lower constant is attained exactly; allow round-off.
          if (!(up <= std::exp(bc.c_upper) * (1.0 + 1e-12))) ++violations;
          if (!(lo >= std::exp(bc.c_lower) * (1.0 - 1e-12))) ++violations;
          ++cases;
        }
      }
    }
  }
  return {violations == 0, std::to_string(cases) + " grid points, " + std::to_string(violations) + " violations"};
}

Outcome plaquette_bound() {
  long long violations = 0, total = 0;
  RandomStream root(20240601);
  for (int n = 1; n <= 3; ++n) {
    const GroupSpec g(n);
    RandomStream rng = root.child(static_cast<std::uint64_t>(n));
    for (int i = 0; i < 100000; ++i) {
      std::array<LieCoefficients, 4> x;
      for (auto& xi : x) xi = log_map(haar_sample(g, rng));
      const int k = 1 + i % 4;
      if (!lemma1_bound_check(std::span<const LieCoefficients, 4>(x), k).holds) ++violations;
      ++total;
    }
  }
  return {violations == 0, std::to_string(total) + " quadruples, " + std::to_string(violations) + " violations"};
}

Outcome exact_2d() {
  const LatticeGeometry geom(2, 4, Boundary::Free);
  MCParams p;
  p.seed = 7;
  const LogZEstimate e = estimate_log_Z(geom, 1.0, GroupSpec(1), p);
  const double exact = static_cast<double>(geom.counts().retained) * std::log(z_upper(1.0, GroupSpec(1)).value);
  const double dev = std::abs(e.value - exact);
  const bool ok = dev <= 3.0 * e.error && e.error < 0.01 * std::abs(e.value);
  return {ok, "ln Z = " + fmt("%.5f", e.value) + " +- " + fmt("%.5f", e.error) + ", exact " + fmt("%.5f", exact)};
}

Outcome mc_sandwich() {
  int passed = 0, total = 0;
  std::string detail;
  std::uint64_t seed = 100;
  for (int n : {1, 2}) {
    for (double beta : {0.5, 1.0}) {
      for (Boundary b : {Boundary::Free, Boundary::Periodic}) {
        const LatticeGeometry geom(3, 4, b);
        const CouplingSpec k = CouplingSpec::with_beta(beta, 3);
        MCParams p;
        p.seed = ++seed;
        const BoundReport r = verify_stability(geom, k, GroupSpec(n), p);
        ++total;
        if (r.verdict) ++passed;
        else
          detail += " [fail N=" + std::to_string(n) + " beta=" + fmt("%g", beta) + " " + to_string(b) + "]";
      }
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " configurations" + detail};
}

Outcome u1_moment() {
  double worst = 0.0;
  for (int d : {2, 3}) {
    CouplingSpec base;
    base.d = d;
    const LimitSequence s = plaquette_moment_limit(2, base, GroupSpec(1), 12);
    worst = std::max(worst, std::abs(s.extrapolated - 0.5));
  }
  return {worst <= 1e-6, "max |<M^2> - 1/2| = " + fmt("%.2e", worst)};
}

Outcome u2_gaussian() {
  CouplingSpec base;
  base.d = 4;
  const GroupSpec g(2);
  const double t2 = plaquette_moment_limit(2, base, g, 12).extrapolated;
  const double t4 = plaquette_moment_limit(4, base, g, 12).extrapolated;
  const GaussianityReport gr = gaussianity_report(g);
  const bool ok = std::abs(t2 - 1.0) <= 1e-6 && std::abs(t4 - 3.0) <= 1e-6 && std::abs(gr.excess) <= 1e-8;
  return {ok, "T2 = " + fmt("%.12f", t2) + ", T4 = " + fmt("%.12f", t4) + ", excess = " + fmt("%.1e", gr.excess)};
}

Outcome generating_bound() {
  const LatticeGeometry geom(2, 4, Boundary::Periodic);
  const CouplingSpec k = CouplingSpec::with_beta(1.0, 2);
  int passed = 0, total = 0;
  std::string detail;
  std::uint64_t seed = 500;
  for (int r : {1, 2}) {
    for (double j : {0.1, 0.5}) {
      SourceSpec s;
      s.plaquettes = r == 1 ? std::vector<int>{0} : std::vector<int>{0, static_cast<int>(geom.plaquettes().size()) / 2};
      s.strengths.assign(s.plaquettes.size(), Complex(j, 0.0));
      MCParams p;
      p.seed = ++seed;
      const GeneratingBoundReport g = verify_generating_bound(geom, k, GroupSpec(1), s, p);
      const bool mean_ok = std::abs(g.mean_field) <= 3.0 * g.mean_field_error;
      ++total;
      if (g.verdict && mean_ok) ++passed;
      detail += " [r=" + std::to_string(r) + " J=" + fmt("%g", j) + " |G|=" + fmt("%.4f", g.abs_g) + " rhs=" +
                fmt("%.4g", g.rhs) + " <trM>=" + fmt("%.3f", g.mean_field) + "+-" + fmt("%.3f", g.mean_field_error) +
                "]";
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + detail};
}

Outcome scalar_exact() {
  double worst = 0.0, worst_scaled = 0.0;
  for (int d = 2; d <= 4; ++d) {
    for (double a : {1.0, 0.5, 0.25}) {
      const ScalarSpec s{d, a, 0.0, 1.0};
      const Site o(d, 0);
      const double g = derivative_correlation(s, 0, 0, o, o).value;
      worst = std::max(worst, std::abs(g / massless_derivative_coincident(s) - 1.0));
      worst_scaled = std::max(worst_scaled, std::abs(a * a * scaling_factor_squared(s) * g - 2.0));
    }
  }
  return {worst <= 1e-8 && worst_scaled <= 1e-8,
          "max relative error " + fmt("%.2e", worst) + ", max |a^2 s^2 G - 2| = " + fmt("%.2e", worst_scaled)};
}

Outcome mass_gap_fit() {
  const std::array<std::array<double, 3>, 4> combos{{{2, 1.0, 1.0}, {3, 0.5, 2.0}, {4, 1.0, 1.0}, {3, 0.25, 2.0}}};
  double worst = 0.0;
  std::string detail;
  for (const auto& c : combos) {
    const ScalarSpec s{static_cast<int>(c[0]), c[1], c[2], 1.0};
    const DecayFit f = fit_decay_rate(s, 0);
    const double rel = std::abs(f.rate / mass_gap(s) - 1.0);
    worst = std::max(worst, rel);
    detail += " " + fmt("%.2e", rel);
  }
  return {worst <= 0.01, "relative deviations" + detail};
}

Outcome d4_invariance() {
  double worst = 0.0;
  for (int n : {1, 2}) {
    const GroupSpec g(n);
    for (double g2 : {0.1, 1.0}) {
      std::vector<std::array<double, 6>> rows;
      for (double a : {1.0, 0.5, 0.1}) {
        CouplingSpec k;
        k.d = 4;
        k.a = a;
        k.g2 = g2;
        const BoundConstants bc = bound_constants(k, g);
        rows.push_back({normalized_free_energy(k, g).value, plaquette_moment(2, k, g).value,
                        plaquette_moment(4, k, g).value, approx_log_partition_normalized(2, k, g).value, bc.c_upper,
                        bc.c_lower});
      }
      for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i)
          worst = std::max(worst, std::abs(r[i] - rows.front()[i]) / std::max(1.0, std::abs(rows.front()[i])));
    }
  }
  return {worst <= 1e-12, "max relative spread " + fmt("%.2e", worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / "ymlab-acceptance-determinism";
  std::filesystem::remove_all(base);
  int identical = 0, total = 0;
  for (const char* suite : {"weyl-check", "single-bond", "approx", "scalar"}) {
    std::array<std::string, 2> out;
    for (int run = 0; run < 2; ++run) {
      RunConfig c;
      c.suite = suite;
      c.ranks = {1, 2};
      c.dims = {2, 3};
      c.a_values = {1.0, 0.5};
      c.seed = 31;
      c.out_dir = (base / ("run" + std::to_string(run))).string();
      run_suite(c);
      out[run] = slurp(std::filesystem::path(c.out_dir) / (std::string(suite) + ".jsonl"));
    }
    ++total;
    if (!out[0].empty() && out[0] == out[1]) ++identical;
  }
  std::filesystem::remove_all(base);
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) + " suites byte-identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Weyl normalization N=1..3", 10.0, weyl_normalization},
      {2, "Gaussian ensemble constants N=1,2", 0.0, ensemble_constants_oracle},
      {3, "U(1) single-bond Bessel oracle", 0.0, u1_bessel},
      {4, "single-bond sandwich grid", 120.0, single_bond_sandwich},
      {5, "plaquette action bound, 1e5 quadruples per N", 0.0, plaquette_bound},
      {6, "d=2 approximate model is exact (MC)", 300.0, exact_2d},
      {7, "MC partition function sandwich, d=3 L=4", 1800.0, mc_sandwich},
      {8, "U(1) coincident moment limit 1/2", 0.0, u1_moment},
      {9, "U(2) d=4 Gaussian moments", 0.0, u2_gaussian},
      {10, "generating function bound (MC)", 0.0, generating_bound},
      {11, "massless scalar derivative coincident value", 0.0, scalar_exact},
      {12, "scalar mass gap from decay fit", 0.0, mass_gap_fit},
      {13, "d=4 spacing invariance", 0.0, d4_invariance},
      {14, "byte-identical quadrature reports", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += " (over time limit " + fmt("%g", c.time_limit_s) + " s)";
    }
    if (!o.pass) ++failed;
    std::printf("AC%-2d %s  %s: %s [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
