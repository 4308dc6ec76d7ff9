#pragma once

#include <cstddef>

#include "ymlab/weyl_quad.hpp"

namespace ymlab {

// Lattice coupling. beta = a^{d-4} / g^2 is the only scalar the integrals see.
struct CouplingSpec {
  int d = 4;
  double a = 1.0;
  double g2 = 1.0;
  double g0_2 = 1.0;  // upper limit on g^2 used by the lower-bound constant

  double beta() const;
  double g() const;
  void validate() const;

  // a = 1, g^2 = 1 / beta; g0^2 is raised to g^2 if needed.
  static CouplingSpec with_beta(double beta, int d = 4, double g0_2 = 1.0);
};

// C^2 = 4N, the constant of the plaquette bound.
inline double plaquette_constant(const GroupSpec& g) { return 4.0 * g.rank(); }

// Half-width in angle beyond which exp(|J| sqrt(beta)|l| - 4 beta l^2 / pi^2) < e^{-45}.
double source_truncation_width(double beta, double abs_j);

// (1/N_C) int exp[-2 beta sum(1 - cos l)] rho dl
Estimate<double> z_upper(double beta, const GroupSpec& group, const QuadratureSpec& q = {});
// (1/N_C) int exp[-2 C^2 (d-1) beta sum l^2] rho dl
Estimate<double> z_lower(double beta, int d, const GroupSpec& group, const QuadratureSpec& q = {});
// (1/N_C) int exp[J sqrt(beta) sum sin l - 2 beta sum(1 - cos l)] rho dl, J complex.
Estimate<Complex> z_upper_with_source(Complex j, double beta, const GroupSpec& group, const QuadratureSpec& q = {});
// Modulus form used in the generating-function bound: J sqrt(beta) sum sin l
// replaced by |J| sqrt(beta) sum |sin l|.
Estimate<double> z_upper_source_modulus(double abs_j, double beta, const GroupSpec& group,
                                        const QuadratureSpec& q = {});

struct BoundConstants {
  double c_upper;         // ln[(pi/2)^{N^2} N_G / N_C]
  double c_lower;         // ln[N_C^{-1} (4/pi^2)^{N(N-1)/2} (2(d-1)C^2)^{-N^2/2} I_2(u_min)]
  double c_upper_source;  // ln[pi^{N^2 + N/4} N_S^{1/2} / N_C]
  double i_lower;         // I_2(u_min)
};
BoundConstants bound_constants(const CouplingSpec& coupling, const GroupSpec& group, const QuadratureSpec& q = {});

// beta^{-N^2/2} exp(c'_u + pi^2 N |J|^2 / 8)
double source_bound_rhs(double abs_j, double beta, const GroupSpec& group);

struct TrigInequalityReport {
  std::size_t points = 0;
  double max_violation_sin = 0.0;    // max(|sin x| - |x|) on [-pi, pi]
  double max_violation_upper = 0.0;  // max(2 x^2/pi^2 - (1 - cos x)) on [-pi, pi]
  double max_violation_lower = 0.0;  // max((1 - cos x) - x^2/2) on [-pi, pi]
  double max_violation_sin_half = 0.0;  // max(4 x^2/pi^2 - sin^2 x) on [-pi/2, pi/2]
  bool all_hold = false;
};
TrigInequalityReport trig_inequality_suite(std::size_t points = 1000001);

}  // namespace ymlab
