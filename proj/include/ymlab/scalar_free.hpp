#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "ymlab/errors.hpp"
#include "ymlab/estimate.hpp"

namespace ymlab {

struct ScalarSpec {
  int d = 3;
  double a = 1.0;
  double m_u = 1.0;
  double kappa_u = 1.0;

  void validate() const;
};

// s^2 = a^{d-2} (m_u^2 a^2 + 2 d kappa_u^2)
double scaling_factor_squared(const ScalarSpec& spec);
double scaling_factor(const ScalarSpec& spec);
// kappa^2 = [2d + (m_u a / kappa_u)^2]^{-1}
double kappa2(const ScalarSpec& spec);

struct MomentumQuadrature {
  int points = 0;           // per dimension; 0 picks 128 (d <= 3) or 48 (d = 4)
  double tolerance = 1e-6;  // relative two-resolution agreement
};

using Site = std::vector<int>;

// C_a(x, y) = (2 pi)^{-d} int e^{iq(x-y)} / (1 - 2 kappa^2 sum cos q) d^d q.
// The q_0 integral is done in closed form; massless cases use nested
// tanh-sinh quadrature for the integrable singularity at q = 0.
Estimate<double> scaled_propagator(const ScalarSpec& spec, const Site& x, const Site& y,
                                   const MomentumQuadrature& q = {});
// C^u_a = C_a / s^2
Estimate<double> unscaled_propagator(const ScalarSpec& spec, const Site& x, const Site& y,
                                     const MomentumQuadrature& q = {});
// Massless scaled coincident value C_0 in d = 3, 4.
Estimate<double> massless_coincident_value(int d, const MomentumQuadrature& q = {});

// G^u_{mu nu}(x, y) by tensor Gauss-Legendre over (-pi, pi]^d. Never throws
// on resolution; the error field carries the two-resolution difference.
Estimate<double> derivative_correlation(const ScalarSpec& spec, int mu, int nu, const Site& x, const Site& y,
                                        const MomentumQuadrature& q = {});
// s^2 G^u, the scaled-field derivative correlation.
Estimate<double> scaled_derivative_correlation(const ScalarSpec& spec, int mu, int nu, const Site& x, const Site& y,
                                               const MomentumQuadrature& q = {});
// 1 / (d kappa_u^2 a^d)
double massless_derivative_coincident(const ScalarSpec& spec);

// m = (2/a) asinh(m_u a / (2 kappa_u))
template <class T>
T mass_gap(T a, T m_u, T kappa_u) {
  using std::asinh;
  return (T(2) / a) * asinh(m_u * a / (T(2) * kappa_u));
}
double mass_gap(const ScalarSpec& spec);
// (2/a) ln[sqrt(r)/2 + sqrt(4 + r)/2], r = (m_u a / kappa_u)^2
double mass_gap_log_form(const ScalarSpec& spec);

struct DecayFit {
  double rate = 0.0;       // physical units
  double prefactor_power = 0.0;  // coefficient of ln(n) in the fit
  int first = 0;           // lattice separations used
  int last = 0;
  double max_residual = 0.0;
};
// Least squares ln C(n) = c - (m a) n - p ln n + q / n along axis `direction`,
// over separations with C above 1e-14, starting at 5 correlation lengths
// unless a range is given.
DecayFit fit_decay_rate(const ScalarSpec& spec, int direction, int first = 0, int last = 0, bool unscaled = false);

struct GaussianGenerating {
  double value = 0.0;  // exp[(1/2) sum J_j C(x_j, x_k) J_k]
  double bound = 0.0;  // exp[C_0 r sum J_j^2], d = 3, 4
  bool holds = false;
};
GaussianGenerating gaussian_generating_function(const ScalarSpec& spec, const std::vector<Site>& sites,
                                                const std::vector<double>& strengths);

// Covariance M^{-1} of the scaled action on a periodic L^2 lattice, via the
// eigen-decomposition of M = 1 - kappa^2 sum_mu (T_mu + T_mu^T).
Eigen::MatrixXd finite_volume_propagator(const ScalarSpec& spec, int L);

}  // namespace ymlab
