#pragma once

#include <vector>

#include "ymlab/single_bond.hpp"

namespace ymlab {

struct LatticeCounts {
  long long sites = 0;       // L^d
  long long bonds = 0;       // d (L-1) L^{d-1}
  long long extra = 0;       // d L^{d-1}, added by periodic b.c.
  long long retained = 0;    // bonds outside the gauge-fixing tree
  long long plaquettes = 0;  // free b.c.
};

LatticeCounts lattice_counts(int d, int L);

// Plaquette actions enter the approximate model as single-bond factors, so
// ln Z^n = retained * ln z_n with z_n = beta^{N^2/2} z_u.
Estimate<double> approx_log_partition_normalized(int L, const CouplingSpec& coupling, const GroupSpec& group,
                                                 const QuadratureSpec& q = {});
Estimate<double> normalized_free_energy(const CouplingSpec& coupling, const GroupSpec& group,
                                        const QuadratureSpec& q = {});

// A sequence indexed by k with its continuum estimate. The estimate is a
// polynomial extrapolation in 1/beta through the last `order` points.
struct LimitSequence {
  std::vector<double> parameter;  // a_k (d = 2, 3) or g_k^2 (d = 4)
  std::vector<double> beta;
  std::vector<double> values;
  std::vector<double> errors;
  double extrapolated = 0.0;
  double extrapolation_error = 0.0;
  bool cauchy = false;  // successive differences shrink and end below tolerance
};

double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v, int order, double* error);

// a_k = 2^{-k} at fixed g^2 for d = 2, 3; g_k^2 = g^2 2^{-k} for d = 4.
LimitSequence normalized_free_energy_limit(const CouplingSpec& base, const GroupSpec& group, int k_max = 10,
                                           const QuadratureSpec& q = {}, double tolerance = 1e-3);

// <(tr M)^alpha> with tr M = sqrt(beta) sum sin l under the single-bond measure.
Estimate<double> plaquette_moment(int alpha, const CouplingSpec& coupling, const GroupSpec& group,
                                  const QuadratureSpec& q = {});
// a^{-d alpha / 2} <(tr M)^alpha>
Estimate<double> physical_coincident_correlation(int alpha, const CouplingSpec& coupling, const GroupSpec& group,
                                                 const QuadratureSpec& q = {});
LimitSequence plaquette_moment_limit(int alpha, const CouplingSpec& base, const GroupSpec& group, int k_max = 10,
                                     const QuadratureSpec& q = {}, double tolerance = 1e-3);

// Continuum limit T_alpha = <(sum y)^alpha> under exp(-sum y^2) rhohat(y).
Estimate<double> gaussian_moment(int alpha, const GroupSpec& group, const QuadratureSpec& q = {});

struct GaussianityReport {
  int rank = 1;
  double t2 = 0.0;
  double t4 = 0.0;
  double excess = 0.0;  // T4 - 3 T2^2
  double error = 0.0;
};
GaussianityReport gaussianity_report(const GroupSpec& group, const QuadratureSpec& q = {});

// Closed-form U(1) bounds on <(tr M)^2>.
struct MomentBounds {
  double lower = 0.0;
  double upper = 0.0;
};
MomentBounds u1_moment_bounds(const CouplingSpec& coupling);

}  // namespace ymlab
