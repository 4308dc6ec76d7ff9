#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ymlab/lattice_geometry.hpp"

namespace ymlab {

struct GaugeConfig {
  int rank = 1;
  std::vector<Unitary> links;  // one per bond; fixed bonds hold the identity

  static GaugeConfig identity(const LatticeGeometry& geometry, const GroupSpec& group);
  // Haar-random on retained bonds, identity on fixed ones.
  static GaugeConfig random(const LatticeGeometry& geometry, const GroupSpec& group, RandomStream& rng);
};

struct MCParams {
  int sweeps = 4000;          // measured sweeps per beta point and chain
  int thermalization = 400;   // sweeps before measuring, with epsilon tuning
  double epsilon = 1.0;       // initial proposal width
  int chains = 2;
  std::uint64_t seed = 1;
  std::vector<double> beta_grid;  // empty: uniform grid of grid_points in [0, beta]
  int grid_points = 21;
  int hits = 2;                   // Metropolis hits per bond visit
  int batches = 40;               // batch means per chain
  int threads = 1;

  void validate() const;
};

void check_shape(const GaugeConfig& config, const LatticeGeometry& geometry);
Matrix plaquette_matrix(const GaugeConfig& config, const LatticeGeometry& geometry, int plaquette);
// A^B = sum_p 2 Re Tr(1 - U_p)
double wilson_action(const GaugeConfig& config, const LatticeGeometry& geometry);
// U_b(x) -> G_x U_b(x) G_{x+mu}^dagger on every bond, fixed ones included.
GaugeConfig gauge_transform(const GaugeConfig& config, const LatticeGeometry& geometry,
                            std::span<const Unitary> site_transforms);

struct SweepResult {
  double acceptance = 0.0;
};
// One pass over the retained bonds, `hits` proposals each.
SweepResult metropolis_sweep(GaugeConfig& config, const LatticeGeometry& geometry, double beta, double epsilon,
                             int hits, RandomStream& rng);

struct LogZEstimate {
  double value = 0.0;
  double error = 0.0;              // total 1-sigma
  double statistical_error = 0.0;
  double refinement_delta = 0.0;   // |fine - coarse| trapezoid difference
  double split_difference = 0.0;   // first-half minus second-half estimate
  std::vector<double> beta_grid;
  std::vector<double> mean_action;
  std::vector<double> mean_action_error;
  std::vector<double> acceptance;
};

// ln Z(beta) = -int_0^beta <A^B> dbeta' with Haar-normalized Z(0) = 1.
LogZEstimate estimate_log_Z(const LatticeGeometry& geometry, double beta, const GroupSpec& group,
                            const MCParams& params);

struct BoundReport {
  LogZEstimate estimate;
  double lower = 0.0;  // exponent * ln z_l
  double upper = 0.0;  // retained * ln z_u
  long long lower_exponent = 0;
  long long upper_exponent = 0;
  bool verdict = false;
};
BoundReport verify_stability(const LatticeGeometry& geometry, const CouplingSpec& coupling, const GroupSpec& group,
                             const MCParams& params, const QuadratureSpec& q = {});

enum class FieldVariant { M, F, S };
double plaquette_field(const Matrix& up, const CouplingSpec& coupling, FieldVariant variant);
double plaquette_field(const GaugeConfig& config, const LatticeGeometry& geometry, int plaquette,
                       const CouplingSpec& coupling, FieldVariant variant);

struct SourceSpec {
  std::vector<int> plaquettes;
  std::vector<Complex> strengths;

  void validate(const LatticeGeometry& geometry) const;
};

// Recorded tr M values on a list of plaquettes: values[chain][sample * r + j].
struct FieldSamples {
  int sources = 0;
  double beta = 0.0;
  int batches = 40;
  std::vector<std::vector<double>> values;
  double acceptance = 0.0;
};

FieldSamples sample_plaquette_fields(const LatticeGeometry& geometry, const CouplingSpec& coupling,
                                     const GroupSpec& group, std::span<const int> plaquettes, const MCParams& params);
// <exp(sum_j J_j tr M_{p_j})> on recorded samples.
Estimate<Complex> generating_function(const FieldSamples& samples, std::span<const Complex> strengths);
Estimate<Complex> estimate_generating_function(const LatticeGeometry& geometry, const CouplingSpec& coupling,
                                               const GroupSpec& group, const SourceSpec& sources,
                                               const MCParams& params);

struct CorrelationEstimate {
  double scaled = 0.0;  // Richardson-refined derivative at J = 0
  double error = 0.0;
  double coarse = 0.0;  // step h
  double fine = 0.0;    // step h / 2
  double physical = 0.0;  // a^{-d} scaled, for r = 2
  double physical_error = 0.0;
};
// Mixed r-th derivative (r = 1, 2) of G at 0 by central differences.
CorrelationEstimate correlation_from_generating(const FieldSamples& samples, const CouplingSpec& coupling,
                                                double h = 0.05, double tolerance = 1e-2);

struct GeneratingBoundReport {
  double abs_g = 0.0;
  double error = 0.0;
  double rhs = 0.0;
  double log_rhs = 0.0;
  double mean_field = 0.0;  // <tr M> on the first source
  double mean_field_error = 0.0;
  bool verdict = false;
};
// |G| <= prod_j |z_u(r J_j)|^{2^d R/(r S)} / z_l^{2^d (R+E)/(r S)}, periodic b.c.
GeneratingBoundReport verify_generating_bound(const LatticeGeometry& geometry, const CouplingSpec& coupling,
                                              const GroupSpec& group, const SourceSpec& sources,
                                              const MCParams& params, const QuadratureSpec& q = {});

// Mean with batch-means standard error over independent chains.
Estimate<double> batch_mean(const std::vector<std::vector<double>>& chains, int batches);

}  // namespace ymlab
