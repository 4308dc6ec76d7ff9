#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ymlab/errors.hpp"
#include "ymlab/scalar_free.hpp"

using namespace ymlab;

TEST_CASE("massless cubic lattice Green function at the origin") {
  const double pi = std::numbers::pi;
  const double closed = std::sqrt(6.0) / (32.0 * pi * pi * pi) * std::tgamma(1.0 / 24) * std::tgamma(5.0 / 24) *
                        std::tgamma(7.0 / 24) * std::tgamma(11.0 / 24);
  CHECK(std::abs(massless_coincident_value(3).value / closed - 1.0) < 1e-8);
}

TEST_CASE("massless two-dimensional propagator is infrared divergent") {
  const ScalarSpec s{2, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS(scaled_propagator(s, {0, 0}, {0, 0}), InfraredDivergent);
}

TEST_CASE("propagator is symmetric and decays") {
  const ScalarSpec s{3, 1.0, 1.0, 1.0};
  const double c01 = scaled_propagator(s, {0, 0, 0}, {1, 0, 0}).value;
  CHECK(c01 == doctest::Approx(scaled_propagator(s, {1, 0, 0}, {0, 0, 0}).value).epsilon(1e-12));
  CHECK(c01 == doctest::Approx(scaled_propagator(s, {0, 0, 0}, {0, 0, 1}).value).epsilon(1e-10));
  CHECK(c01 < scaled_propagator(s, {0, 0, 0}, {0, 0, 0}).value);
  CHECK(unscaled_propagator(s, {0, 0, 0}, {1, 0, 0}).value ==
        doctest::Approx(c01 / scaling_factor_squared(s)).epsilon(1e-12));
}

TEST_CASE("finite periodic lattice approaches infinite volume") {
  const ScalarSpec s{2, 1.0, 2.0, 1.0};
  const Eigen::MatrixXd c = finite_volume_propagator(s, 8);
  CHECK(c(0, 0) == doctest::Approx(scaled_propagator(s, {0, 0}, {0, 0}).value).epsilon(1e-5));
  CHECK(c(0, 1) == doctest::Approx(scaled_propagator(s, {0, 0}, {0, 1}).value).epsilon(1e-5));
}

TEST_CASE("mass gap derivative by complex step") {
  const double a = 0.5, m = 1.3, kappa = 0.9, h = 1e-20;
  using C = std::complex<double>;
  const double numeric = mass_gap<C>(C(a), C(m, h), C(kappa)).imag() / h;
  const double exact = 1.0 / (kappa * std::sqrt(1.0 + std::pow(m * a / (2.0 * kappa), 2)));
  CHECK(numeric == doctest::Approx(exact).epsilon(1e-14));
  const ScalarSpec s{3, a, m, kappa};
  CHECK(mass_gap_log_form(s) == doctest::Approx(mass_gap(s)).epsilon(1e-14));
}

TEST_CASE("massless derivative correlation at coincident points") {
  for (int d = 2; d <= 4; ++d) {
    const ScalarSpec s{d, 1.0, 0.0, 1.0};
    const Site o(d, 0);
    const double g = derivative_correlation(s, 0, 0, o, o).value;
    CHECK(std::abs(g / massless_derivative_coincident(s) - 1.0) < 1e-8);
    CHECK(scaling_factor_squared(s) * g == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("decay rate fit recovers the mass gap") {
  const ScalarSpec s{2, 1.0, 1.0, 1.0};
  const DecayFit f = fit_decay_rate(s, 0);
  CHECK(std::abs(f.rate / mass_gap(s) - 1.0) < 0.01);
}

TEST_CASE("Gaussian generating function bound") {
  const ScalarSpec s{3, 1.0, 0.5, 1.0};
  const GaussianGenerating g = gaussian_generating_function(s, {{0, 0, 0}, {1, 0, 0}}, {0.5, -0.3});
  CHECK(g.holds);
  CHECK(g.value >= 1.0);
}

TEST_CASE("scalar spec validation") {
  CHECK_THROWS_AS(ScalarSpec({5, 1.0, 1.0, 1.0}).validate(), InvalidCoupling);
  CHECK_THROWS_AS(ScalarSpec({3, 2.0, 1.0, 1.0}).validate(), InvalidCoupling);
  CHECK_THROWS_AS(ScalarSpec({3, 1.0, -1.0, 1.0}).validate(), InvalidCoupling);
}
