#include <doctest.h>

#include <cmath>

#include "ymlab/approx_model.hpp"
#include "ymlab/errors.hpp"

using namespace ymlab;

TEST_CASE("closed-form lattice counts") {
  const LatticeCounts c = lattice_counts(2, 4);
  CHECK(c.sites == 16);
  CHECK(c.bonds == 24);
  CHECK(c.extra == 8);
  CHECK(c.plaquettes == 9);
  CHECK(c.retained == c.bonds - (c.sites - 1));
  CHECK_THROWS(lattice_counts(2, 3));
  CHECK_THROWS(lattice_counts(5, 4));
}

TEST_CASE("polynomial extrapolation is exact on polynomials") {
  std::vector<double> h{1.0, 0.5, 0.25, 0.125, 0.0625}, v;
  for (double x : h) v.push_back(2.0 - 3.0 * x + 0.5 * x * x * x);
  double err = 0.0;
  CHECK(extrapolate_to_zero(h, v, 5, &err) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("coincident U(1) moment tends to one half") {
  for (int d : {2, 3}) {
    CouplingSpec base;
    base.d = d;
    const LimitSequence s = plaquette_moment_limit(2, base, GroupSpec(1), 12);
    CHECK(std::abs(s.extrapolated - 0.5) < 1e-6);
    CHECK(s.cauchy);
  }
}

TEST_CASE("Gaussian moments of the trace") {
  for (int n = 1; n <= 3; ++n) {
    const GaussianityReport r = gaussianity_report(GroupSpec(n));
    CHECK(r.t2 == doctest::Approx(0.5 * n).epsilon(1e-10));
    CHECK(std::abs(r.excess) < 1e-8);
  }
}

TEST_CASE("free energy tends to the Gaussian constant") {
  const GroupSpec g(1);
  const EnsembleConstants c = ensemble_constants(g);
  CouplingSpec base;
  base.d = 3;
  const LimitSequence s = normalized_free_energy_limit(base, g, 12);
  CHECK(s.extrapolated == doctest::Approx(std::log(c.gaussian_unitary / c.circular)).epsilon(1e-8));
}

TEST_CASE("U(1) moment bounds bracket the moment") {
  for (double g2 : {0.2, 1.0}) {
    CouplingSpec k;
    k.d = 2;
    k.a = 0.5;
    k.g2 = g2;
    const MomentBounds b = u1_moment_bounds(k);
    const double m = plaquette_moment(2, k, GroupSpec(1)).value;
    CHECK(b.lower <= m);
    CHECK(m <= b.upper);
  }
}

TEST_CASE("d = 4 scaled quantities do not depend on the spacing") {
  CouplingSpec k;
  k.d = 4;
  k.g2 = 0.7;
  const double f1 = normalized_free_energy(k, GroupSpec(2)).value;
  const double m1 = plaquette_moment(2, k, GroupSpec(2)).value;
  k.a = 0.1;
  CHECK(normalized_free_energy(k, GroupSpec(2)).value == f1);
  CHECK(plaquette_moment(2, k, GroupSpec(2)).value == m1);
}
