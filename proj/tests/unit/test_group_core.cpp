#include <doctest.h>

#include <cmath>

#include "ymlab/errors.hpp"
#include "ymlab/group_core.hpp"

using namespace ymlab;

TEST_CASE("group rank is limited to 1..6") {
  CHECK_THROWS_AS(GroupSpec(0), InvalidGroup);
  CHECK_THROWS_AS(GroupSpec(7), InvalidGroup);
  CHECK(GroupSpec(3).dimension() == 9);
}

TEST_CASE("non-unitary input is rejected") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(Unitary::from_matrix(m), NonUnitaryInput);
  CHECK_NOTHROW(Unitary::from_matrix(Matrix::Identity(2, 2)));
}

TEST_CASE("Lie basis is orthonormal under the trace form") {
  for (int n = 1; n <= 4; ++n) {
    const auto& basis = lie_basis(n);
    REQUIRE(basis.size() == static_cast<std::size_t>(n * n));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK((basis[i] - basis[i].adjoint()).norm() < 1e-14);
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double ip = (basis[i] * basis[j]).trace().real();
        const double gram = ip / (basis[0] * basis[0]).trace().real();
        CHECK(gram == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Haar samples are unitary and exp/log round-trips") {
  RandomStream rng(42);
  for (int n = 1; n <= 4; ++n) {
    const GroupSpec g(n);
    for (int i = 0; i < 200; ++i) {
      const Unitary u = haar_sample(g, rng);
      CHECK(u.unitarity_defect() < 1e-12);
      const LieCoefficients x = log_map(u);
      CHECK((exp_map(x).matrix() - u.matrix()).norm() < 1e-10);
      const AngularSpectrum s = angular_eigenvalues(u);
      for (double a : s.angles) CHECK(std::abs(a) <= M_PI + 1e-15);
    }
  }
}

TEST_CASE("lie_decompose inverts to_matrix") {
  RandomStream rng(3);
  LieCoefficients x;
  x.rank = 3;
  for (int i = 0; i < 9; ++i) x.x.push_back(rng.normal());
  const LieCoefficients y = lie_decompose(x.to_matrix());
  for (int i = 0; i < 9; ++i) CHECK(y.x[i] == doctest::Approx(x.x[i]).epsilon(1e-12));
}

TEST_CASE("plaquette action equals the squared distance to the identity") {
  RandomStream rng(5);
  const GroupSpec g(3);
  for (int i = 0; i < 50; ++i) {
    const Matrix up =
        plaquette_product(haar_sample(g, rng), haar_sample(g, rng), haar_sample(g, rng), haar_sample(g, rng));
    const double hs = (up - Matrix::Identity(3, 3)).squaredNorm();
    CHECK(plaquette_action(up) == doctest::Approx(hs).epsilon(1e-12));
  }
  const Unitary one = Unitary::identity(2);
  CHECK(plaquette_action(one, one, one, one) == 0.0);
}

TEST_CASE("one_minus_cos matches the direct form away from zero") {
  for (double x = -3.0; x <= 3.0; x += 0.37) CHECK(one_minus_cos(x) == doctest::Approx(1.0 - std::cos(x)));
  CHECK(one_minus_cos(1e-9) == doctest::Approx(5e-19));
}

TEST_CASE("plaquette action bound holds on random Lie data") {
  RandomStream rng(11);
  for (int n = 1; n <= 3; ++n) {
    const GroupSpec g(n);
    for (int i = 0; i < 2000; ++i) {
      std::array<LieCoefficients, 4> x;
      for (auto& xi : x) xi = log_map(haar_sample(g, rng));
      for (int k = 1; k <= 4; ++k) CHECK(lemma1_bound_check(std::span<const LieCoefficients, 4>(x), k).holds);
    }
  }
}

TEST_CASE("random streams are reproducible and children differ") {
  RandomStream a(9), b(9);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());
  CHECK(RandomStream(9).child(0).seed() != RandomStream(9).child(1).seed());
  RandomStream c(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = c.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}
