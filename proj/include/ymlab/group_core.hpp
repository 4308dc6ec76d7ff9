#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "ymlab/rng.hpp"

namespace ymlab {

using Complex = std::complex<double>;

// Matrices never exceed rank 6, so storage stays on the stack.
inline constexpr int kMaxRank = 6;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxRank, kMaxRank>;

class GroupSpec {
 public:
  explicit GroupSpec(int rank);
  int rank() const { return rank_; }
  int dimension() const { return rank_ * rank_; }
  bool operator==(const GroupSpec&) const = default;

 private:
  int rank_;
};

class Unitary {
 public:
  static constexpr double kInputTolerance = 1e-8;

  // Validating constructor for external input.
  static Unitary from_matrix(const Matrix& m, double tolerance = kInputTolerance);
  static Unitary identity(int rank);
  // No check; for products and maps that preserve unitarity by construction.
  static Unitary trusted(const Matrix& m) { return Unitary(m); }

  const Matrix& matrix() const { return m_; }
  int rank() const { return static_cast<int>(m_.rows()); }
  Unitary adjoint() const { return Unitary(m_.adjoint()); }
  double unitarity_defect() const;
  // Nearest unitary via QR with the diagonal phase fixed.
  Unitary reunitarized() const;

  friend Unitary operator*(const Unitary& a, const Unitary& b) { return Unitary(a.m_ * b.m_); }

 private:
  explicit Unitary(const Matrix& m) : m_(m) {}
  Matrix m_;
};

// Sorted angles in (-pi, pi].
struct AngularSpectrum {
  std::vector<double> angles;
};

// Coefficients on the orthonormal Hermitian basis from lie_basis(); the last
// basis element is I / sqrt(N).
struct LieCoefficients {
  int rank = 1;
  std::vector<double> x;

  Matrix to_matrix() const;
  double norm_squared() const;
};

// Generalized Gell-Mann matrices normalized to Tr(t_a t_b) = delta_ab.
// Order: for each pair j<k a symmetric then antisymmetric element, then the
// traceless diagonals, then I / sqrt(N). For N = 2 this is sigma_{1,2,3}, I over sqrt 2.
const std::vector<Matrix>& lie_basis(int rank);

Unitary haar_sample(const GroupSpec& group, RandomStream& rng);
AngularSpectrum angular_eigenvalues(const Unitary& u);
LieCoefficients log_map(const Unitary& u);
Unitary exp_map(const LieCoefficients& x);
Unitary exp_i_hermitian(const Matrix& h);
LieCoefficients lie_decompose(const Matrix& hermitian);

// Oriented product U1 U2 U3^dagger U4^dagger.
Matrix plaquette_product(const Unitary& u1, const Unitary& u2, const Unitary& u3, const Unitary& u4);
// 2 Re Tr(1 - U_p).
double plaquette_action(const Unitary& u1, const Unitary& u2, const Unitary& u3, const Unitary& u4);
double plaquette_action(const Matrix& up);
// ||U_p - 1||^2 in the Hilbert-Schmidt norm; equal to plaquette_action.
double hilbert_schmidt_action(const Matrix& up);

struct Lemma1Check {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// Bonds with index >= retained are set to the identity.
Lemma1Check lemma1_bound_check(std::span<const LieCoefficients, 4> x, int retained);

// 2 sin^2(x/2), accurate for small x.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

}  // namespace ymlab
