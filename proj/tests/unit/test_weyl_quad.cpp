#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ymlab/errors.hpp"
#include "ymlab/weyl_quad.hpp"

using namespace ymlab;

namespace {
double one(std::span<const double>) { return 1.0; }
}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const GaussLegendreRule r = gauss_legendre(10, -1.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 19);
  CHECK(s == doctest::Approx((std::pow(2.0, 20) - 1.0) / 20.0).epsilon(1e-13));
}

TEST_CASE("Weyl measure is normalized") {
  for (int n = 1; n <= 3; ++n) {
    const Estimate<double> e = weyl_integrate(one, GroupSpec(n));
    CHECK(std::abs(e.value - 1.0) < 1e-9);
  }
}

TEST_CASE("Haar moment of the trace") {
  auto trace_sq = [](std::span<const double> l) {
    std::complex<double> t = 0.0;
    for (double v : l) t += std::polar(1.0, v);
    return std::norm(t);
  };
  for (int n = 1; n <= 3; ++n) CHECK(weyl_integrate(trace_sq, GroupSpec(n)).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Gaussian ensemble constants match quadrature") {
  for (int n = 1; n <= 3; ++n) {
    const GroupSpec g(n);
    const EnsembleConstants c = ensemble_constants(g);
    CHECK(c.circular == doctest::Approx(std::pow(2.0 * std::numbers::pi, n) * std::tgamma(n + 1.0)));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(i_beta(2, inf, g).value == doctest::Approx(c.gaussian_unitary).epsilon(1e-10));
    CHECK(i_beta(4, inf, g).value == doctest::Approx(c.gaussian_symplectic).epsilon(1e-10));
  }
  CHECK(ensemble_constants(GroupSpec(1)).gaussian_unitary == doctest::Approx(std::sqrt(std::numbers::pi)));
}

TEST_CASE("quasi-random and Monte Carlo estimates agree within error") {
  QuadratureSpec q;
  q.method = QuadratureMethod::QuasiRandom;
  q.samples = 1 << 16;
  q.tolerance = 2e-2;
  const Estimate<double> qmc = weyl_integrate(one, GroupSpec(2), q);
  CHECK(std::abs(qmc.value - 1.0) < 1e-2);
  q.method = QuadratureMethod::MonteCarlo;
  q.seed = 7;
  const Estimate<double> mc = weyl_integrate(one, GroupSpec(2), q);
  CHECK(std::abs(mc.value - 1.0) < 5.0 * mc.error);
}

TEST_CASE("coarse grids on peaked integrands are refused") {
  QuadratureSpec q;
  q.resolution = 8;
  auto peaked = [](std::span<const double> l) { return std::exp(-2000.0 * (1.0 - std::cos(l[0]))); };
  CHECK_THROWS_AS(weyl_integrate(peaked, GroupSpec(1), q), ResolutionTooLow);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  CHECK_THROWS(q.validate(5));
  q.resolution = 4;
  CHECK_THROWS(q.validate(1));
}
