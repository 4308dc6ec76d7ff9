#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ymlab/errors.hpp"
#include "ymlab/single_bond.hpp"

using namespace ymlab;

namespace {

// e^{-2b} I_0(2b) by its power series, independent of the library routine.
double bessel_oracle(double beta) {
  const double x = beta;  // (2 beta / 2)
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= (x / k) * (x / k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::exp(-2.0 * beta) * sum;
}

}  // namespace

TEST_CASE("U(1) single-bond integral matches the Bessel series") {
  for (double beta : {0.1, 1.0, 10.0}) {
    const double z = z_upper(beta, GroupSpec(1)).value;
    CHECK(std::abs(z / bessel_oracle(beta) - 1.0) < 1e-12);
  }
}

TEST_CASE("scaled single-bond integral approaches the Gaussian constant") {
  for (int n = 1; n <= 2; ++n) {
    const GroupSpec g(n);
    const EnsembleConstants c = ensemble_constants(g);
    const double beta = 1e6;
    const double zn = std::pow(beta, 0.5 * n * n) * z_upper(beta, g).value;
    CHECK(zn == doctest::Approx(c.gaussian_unitary / c.circular).epsilon(1e-5));
  }
  CHECK(ensemble_constants(GroupSpec(2)).gaussian_unitary / ensemble_constants(GroupSpec(2)).circular ==
        doctest::Approx(1.0 / (8.0 * std::numbers::pi)));
}

TEST_CASE("upper and lower constants sandwich the scaled integrals") {
  for (int n = 1; n <= 2; ++n) {
    const GroupSpec g(n);
    for (int d = 2; d <= 4; ++d) {
      for (double a : {1.0, 0.3, 0.05}) {
        CouplingSpec k;
        k.d = d;
        k.a = a;
        k.g2 = 0.5;
        const BoundConstants bc = bound_constants(k, g);
        const double s = std::pow(k.beta(), 0.5 * n * n);
        CHECK(s * z_upper(k.beta(), g).value <= std::exp(bc.c_upper));
        CHECK(s * z_lower(k.beta(), d, g).value >= std::exp(bc.c_lower) * (1.0 - 1e-12));
      }
    }
  }
}

TEST_CASE("U(1) upper constant") {
  CouplingSpec k;
  CHECK(bound_constants(k, GroupSpec(1)).c_upper == doctest::Approx(std::log(std::sqrt(std::numbers::pi) / 4.0)));
}

TEST_CASE("source integral is bounded and reduces at zero source") {
  const GroupSpec g(1);
  CHECK(std::abs(z_upper_with_source(0.0, 2.0, g).value - z_upper(2.0, g).value) < 1e-14);
  for (double j : {0.1, 0.5, 1.0, 3.0}) {
    const double lhs = std::abs(z_upper_with_source(Complex(j, 0.0), 2.0, g).value);
    CHECK(lhs <= source_bound_rhs(j, 2.0, g));
    CHECK(z_upper_source_modulus(j, 2.0, g).value >= lhs * (1.0 - 1e-12));
  }
}

TEST_CASE("elementary trigonometric inequalities") {
  const TrigInequalityReport r = trig_inequality_suite(100001);
  CHECK(r.all_hold);
}

TEST_CASE("coupling validation") {
  CouplingSpec k;
  k.g2 = -1.0;
  CHECK_THROWS_AS(k.validate(), InvalidCoupling);
  k.g2 = 2.0;
  k.g0_2 = 1.0;
  CHECK_THROWS_AS(k.validate(), InvalidCoupling);
  CHECK(CouplingSpec::with_beta(4.0, 3).beta() == doctest::Approx(4.0));
}
