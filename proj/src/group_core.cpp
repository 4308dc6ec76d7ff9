#include "ymlab/group_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include "ymlab/errors.hpp"

namespace ymlab {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double t) {
  if (t <= -kPi) return kPi;
  return t;
}

Matrix diagonal_phase_fix(const Matrix& q, const Matrix& r) {
  Matrix out = q;
  for (int j = 0; j < r.rows(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    out.col(j) *= (mag > 0.0 ? d / mag : Complex(1.0, 0.0));
  }
  return out;
}

Matrix qr_unitary(const Matrix& z) {
  Eigen::HouseholderQR<Matrix> qr(z);
  const int n = static_cast<int>(z.rows());
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  return diagonal_phase_fix(q, r);
}

std::vector<Matrix> build_basis(int n) {
  std::vector<Matrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix s = Matrix::Zero(n, n);
      s(j, k) = s(k, j) = inv_sqrt2;
      basis.push_back(s);
      Matrix a = Matrix::Zero(n, n);
      a(j, k) = Complex(0.0, -inv_sqrt2);
      a(k, j) = Complex(0.0, inv_sqrt2);
      basis.push_back(a);
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix h = Matrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int i = 0; i < l; ++i) h(i, i) = c;
    h(l, l) = -l * c;
    basis.push_back(h);
  }
  basis.push_back(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  return basis;
}

}  // namespace

GroupSpec::GroupSpec(int rank) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw InvalidGroup("rank must lie in [1, " + std::to_string(kMaxRank) + "], got " + std::to_string(rank));
  }
}

Unitary Unitary::from_matrix(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxRank) {
    throw NonUnitaryInput("matrix must be square with rank in [1, 6]");
  }
  const int n = static_cast<int>(m.rows());
  const double defect = (m.adjoint() * m - Matrix::Identity(n, n)).norm();
  if (!(defect <= tolerance)) {
    throw NonUnitaryInput("||U^dagger U - 1|| = " + std::to_string(defect));
  }
  return Unitary(m);
}

Unitary Unitary::identity(int rank) { return Unitary(Matrix::Identity(rank, rank)); }

double Unitary::unitarity_defect() const {
  const int n = rank();
  return (m_.adjoint() * m_ - Matrix::Identity(n, n)).norm();
}

Unitary Unitary::reunitarized() const { return Unitary(qr_unitary(m_)); }

Matrix LieCoefficients::to_matrix() const {
  const auto& basis = lie_basis(rank);
  Matrix h = Matrix::Zero(rank, rank);
  for (std::size_t a = 0; a < basis.size(); ++a) h += x[a] * basis[a];
  return h;
}

double LieCoefficients::norm_squared() const {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

const std::vector<Matrix>& lie_basis(int rank) {
  static std::array<std::vector<Matrix>, kMaxRank + 1> cache;
  static std::once_flag flags[kMaxRank + 1];
  const GroupSpec g(rank);
  std::call_once(flags[g.rank()], [&] { cache[g.rank()] = build_basis(g.rank()); });
  return cache[g.rank()];
}

Unitary haar_sample(const GroupSpec& group, RandomStream& rng) {
  const int n = group.rank();
  Matrix z(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(r, c) = Complex(re * s, im * s);
    }
  }
  return Unitary::trusted(qr_unitary(z));
}

namespace {

// Schur form of a normal matrix: U = Q T Q^dagger with T diagonal.
struct Spectral {
  Matrix q;
  std::vector<double> angles;
};

Spectral spectral(const Unitary& u) {
  Eigen::ComplexSchur<Matrix> schur(u.matrix());
  Spectral s;
  s.q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  for (int j = 0; j < t.rows(); ++j) s.angles.push_back(wrap_angle(std::arg(t(j, j))));
  return s;
}

}  // namespace

AngularSpectrum angular_eigenvalues(const Unitary& u) {
  AngularSpectrum out{spectral(u).angles};
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

LieCoefficients lie_decompose(const Matrix& hermitian) {
  const int n = static_cast<int>(hermitian.rows());
  const auto& basis = lie_basis(n);
  LieCoefficients out;
  out.rank = n;
  out.x.reserve(basis.size());
  for (const auto& t : basis) out.x.push_back((hermitian * t).trace().real());
  return out;
}

LieCoefficients log_map(const Unitary& u) {
  const Spectral s = spectral(u);
  const int n = u.rank();
  Matrix d = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = s.angles[j];
  const Matrix x = s.q * d * s.q.adjoint();
  return lie_decompose(0.5 * (x + x.adjoint()));
}

Unitary exp_i_hermitian(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  if (n == 1) return Unitary::trusted(Matrix::Constant(1, 1, std::exp(Complex(0.0, h(0, 0).real()))));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Matrix d = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) d(j, j) = std::exp(Complex(0.0, es.eigenvalues()(j)));
  return Unitary::trusted(es.eigenvectors() * d * es.eigenvectors().adjoint());
}

Unitary exp_map(const LieCoefficients& x) { return exp_i_hermitian(x.to_matrix()); }

Matrix plaquette_product(const Unitary& u1, const Unitary& u2, const Unitary& u3, const Unitary& u4) {
  return u1.matrix() * u2.matrix() * u3.matrix().adjoint() * u4.matrix().adjoint();
}

double plaquette_action(const Matrix& up) {
  return 2.0 * (static_cast<double>(up.rows()) - up.trace().real());
}

double plaquette_action(const Unitary& u1, const Unitary& u2, const Unitary& u3, const Unitary& u4) {
  return plaquette_action(plaquette_product(u1, u2, u3, u4));
}

double hilbert_schmidt_action(const Matrix& up) {
  const int n = static_cast<int>(up.rows());
  return (up - Matrix::Identity(n, n)).squaredNorm();
}

Lemma1Check lemma1_bound_check(std::span<const LieCoefficients, 4> x, int retained) {
  if (retained < 1 || retained > 4) throw ShapeMismatch("retained bond count must be 1..4");
  const int n = x[0].rank;
  std::array<Unitary, 4> u{Unitary::identity(n), Unitary::identity(n), Unitary::identity(n), Unitary::identity(n)};
  double sum = 0.0;
  for (int j = 0; j < retained; ++j) {
    if (x[j].rank != n) throw ShapeMismatch("coefficient ranks differ");
    u[j] = exp_map(x[j]);
    sum += x[j].norm_squared();
  }
  Lemma1Check c;
  c.lhs = plaquette_action(u[0], u[1], u[2], u[3]);
  c.rhs = retained * n * sum;
  c.holds = c.lhs <= c.rhs * (1.0 + 1e-12) + 1e-14;
  return c;
}

}  // namespace ymlab
