#include "ymlab/lattice_mc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <thread>

namespace ymlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kProposalPairs = 24;

double re_trace_product(const Matrix& u, const Matrix& s) { return (u.cwiseProduct(s.transpose())).sum().real(); }

// Oriented product of the other three bonds, so that the plaquette's
// Re Tr equals Re Tr(U_b R).
Matrix staple_term(const GaugeConfig& c, const LatticeGeometry::Plaquette& p, int position) {
  const Matrix& u0 = c.links[p.bonds[0]].matrix();
  const Matrix& u1 = c.links[p.bonds[1]].matrix();
  const Matrix& u2 = c.links[p.bonds[2]].matrix();
  const Matrix& u3 = c.links[p.bonds[3]].matrix();
  switch (position) {
    case 0: return u1 * u2.adjoint() * u3.adjoint();
    case 1: return u2.adjoint() * u3.adjoint() * u0;
    case 2: return u1.adjoint() * u0.adjoint() * u3;
    default: return u2 * u1.adjoint() * u0.adjoint();
  }
}

Matrix random_unit_hermitian(int n, RandomStream& rng) {
  const auto& basis = lie_basis(n);
  std::vector<double> h(basis.size());
  double norm = 0.0;
  for (auto& v : h) {
    v = rng.normal();
    norm += v * v;
  }
  norm = std::sqrt(norm);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < basis.size(); ++a) out += (h[a] / norm) * basis[a];
  return out;
}

std::vector<double> resolve_grid(const MCParams& params, double beta) {
  std::vector<double> grid = params.beta_grid;
  if (grid.empty()) {
    const int n = std::max(2, params.grid_points);
    for (int i = 0; i < n; ++i) grid.push_back(beta * i / (n - 1));
  }
  if (grid.front() != 0.0 || std::abs(grid.back() - beta) > 1e-12 * std::max(1.0, beta))
    throw InvalidCoupling("beta grid must run from 0 to beta");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidCoupling("beta grid must be strictly increasing");
  return grid;
}

// Runs `body(chain_index)` for every chain, on up to params.threads threads.
void for_each_chain(const MCParams& params, const std::function<void(int)>& body) {
  const int threads = std::clamp(params.threads, 1, params.chains);
  if (threads == 1) {
    for (int c = 0; c < params.chains; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < params.chains; c += threads) body(c);
    });
  }
  for (auto& th : pool) th.join();
}

// Thermalization with acceptance-driven tuning of epsilon.
double thermalize(GaugeConfig& config, const LatticeGeometry& g, double beta, double epsilon, const MCParams& params,
                  RandomStream& rng) {
  double acc = 0.0;
  int window = 0;
  for (int s = 0; s < params.thermalization; ++s) {
    acc += metropolis_sweep(config, g, beta, epsilon, params.hits, rng).acceptance;
    if (++window == 20) {
      const double rate = acc / window;
      if (rate > 0.6) epsilon = std::min(kPi, epsilon * 1.25);
      if (rate < 0.4) epsilon *= 0.8;
      acc = 0.0;
      window = 0;
    }
  }
  return epsilon;
}

void reunitarize(GaugeConfig& config, const LatticeGeometry& g) {
  for (int b : g.retained_bonds()) config.links[b] = config.links[b].reunitarized();
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

// Every other grid point, always keeping the last one.
std::vector<std::size_t> coarse_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += 2) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

template <class F>
std::vector<std::vector<double>> map_samples(const FieldSamples& s, F&& per_sample) {
  std::vector<std::vector<double>> out(s.values.size());
  for (std::size_t c = 0; c < s.values.size(); ++c) {
    const auto& v = s.values[c];
    const std::size_t n = v.size() / s.sources;
    out[c].reserve(n);
    for (std::size_t i = 0; i < n; ++i) out[c].push_back(per_sample(std::span<const double>(v.data() + i * s.sources, s.sources)));
  }
  return out;
}

}  // namespace

GaugeConfig GaugeConfig::identity(const LatticeGeometry& geometry, const GroupSpec& group) {
  GaugeConfig c;
  c.rank = group.rank();
  c.links.assign(geometry.bonds().size(), Unitary::identity(group.rank()));
  return c;
}

GaugeConfig GaugeConfig::random(const LatticeGeometry& geometry, const GroupSpec& group, RandomStream& rng) {
  GaugeConfig c = identity(geometry, group);
  for (int b : geometry.retained_bonds()) c.links[b] = haar_sample(group, rng);
  return c;
}

void MCParams::validate() const {
  if (sweeps < 1 || thermalization < 0) throw InvalidCoupling("sweep counts must be positive");
  if (sweeps < thermalization) throw InvalidCoupling("sweeps must be at least the thermalization count");
  if (!(epsilon > 0.0 && epsilon <= kPi)) throw InvalidCoupling("epsilon must lie in (0, pi]");
  if (chains < 1) throw InvalidCoupling("need at least one chain");
  if (hits < 1) throw InvalidCoupling("hits must be positive");
  if (batches < 4 || sweeps < batches) throw InvalidCoupling("need 4 <= batches <= sweeps");
}

void check_shape(const GaugeConfig& config, const LatticeGeometry& geometry) {
  if (config.links.size() != geometry.bonds().size())
    throw ShapeMismatch("config has " + std::to_string(config.links.size()) + " links, geometry has " +
                        std::to_string(geometry.bonds().size()) + " bonds");
  for (const auto& u : config.links)
    if (u.rank() != config.rank) throw ShapeMismatch("link rank differs from config rank");
}

Matrix plaquette_matrix(const GaugeConfig& config, const LatticeGeometry& geometry, int plaquette) {
  const auto& p = geometry.plaquettes().at(plaquette);
  return plaquette_product(config.links[p.bonds[0]], config.links[p.bonds[1]], config.links[p.bonds[2]],
                           config.links[p.bonds[3]]);
}

double wilson_action(const GaugeConfig& config, const LatticeGeometry& geometry) {
  check_shape(config, geometry);
  double a = 0.0;
  for (std::size_t p = 0; p < geometry.plaquettes().size(); ++p)
    a += plaquette_action(plaquette_matrix(config, geometry, static_cast<int>(p)));
  return a;
}

GaugeConfig gauge_transform(const GaugeConfig& config, const LatticeGeometry& geometry,
                            std::span<const Unitary> site_transforms) {
  check_shape(config, geometry);
  if (site_transforms.size() != static_cast<std::size_t>(geometry.site_count()))
    throw ShapeMismatch("need one transform per site");
  GaugeConfig out = config;
  for (std::size_t b = 0; b < geometry.bonds().size(); ++b) {
    const auto& bond = geometry.bonds()[b];
    const int x = bond.site;
    const int y = geometry.shift(x, bond.direction);
    out.links[b] = site_transforms[x] * config.links[b] * site_transforms[y].adjoint();
  }
  return out;
}

SweepResult metropolis_sweep(GaugeConfig& config, const LatticeGeometry& geometry, double beta, double epsilon,
                             int hits, RandomStream& rng) {
  const int n = config.rank;
  // Symmetric proposal set: each exp(i t H) comes with its inverse; t is
  // uniform in (0, epsilon] so U(1) steps are not restricted to a lattice.
  std::array<Matrix, 2 * kProposalPairs> table;
  for (int k = 0; k < kProposalPairs; ++k) {
    const double t = epsilon * (1.0 - rng.uniform());
    table[2 * k] = exp_i_hermitian(t * random_unit_hermitian(n, rng)).matrix();
    table[2 * k + 1] = table[2 * k].adjoint();
  }
  long long accepted = 0;
  long long proposed = 0;
  for (int b : geometry.retained_bonds()) {
    Matrix staple = Matrix::Zero(n, n);
    for (const auto& inc : geometry.incidence(b))
      staple += staple_term(config, geometry.plaquettes()[inc.plaquette], inc.position);
    Matrix u = config.links[b].matrix();
    double current = re_trace_product(u, staple);
    for (int h = 0; h < hits; ++h) {
      const int pick = static_cast<int>(rng.uniform() * 2 * kProposalPairs);
      Matrix trial = table[pick] * u;
      const double next = re_trace_product(trial, staple);
      const double delta_a = -2.0 * (next - current);
      ++proposed;
      if (delta_a <= 0.0 || rng.uniform() < std::exp(-beta * delta_a)) {
        u = trial;
        current = next;
        ++accepted;
      }
    }
    config.links[b] = Unitary::trusted(u);
  }
  return {proposed > 0 ? static_cast<double>(accepted) / proposed : 1.0};
}

Estimate<double> batch_mean(const std::vector<std::vector<double>>& chains, int batches) {
  std::vector<double> means;
  for (const auto& c : chains) {
    const std::size_t m = c.size() / batches;
    if (m == 0) throw InvalidCoupling("fewer samples than batches");
    for (int b = 0; b < batches; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += c[b * m + i];
      means.push_back(s / m);
    }
  }
  const double k = static_cast<double>(means.size());
  const double mean = std::accumulate(means.begin(), means.end(), 0.0) / k;
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var /= (k - 1.0);
  return {mean, std::sqrt(var / k)};
}

LogZEstimate estimate_log_Z(const LatticeGeometry& geometry, double beta, const GroupSpec& group,
                            const MCParams& params) {
  params.validate();
  if (beta < 0.0) throw InvalidCoupling("beta must be non-negative");
  LogZEstimate out;
  if (beta == 0.0) {
    out.beta_grid = {0.0};
    return out;
  }
  const std::vector<double> grid = resolve_grid(params, beta);
  const std::size_t np = grid.size();
  // samples[point][chain]
  std::vector<std::vector<std::vector<double>>> samples(np, std::vector<std::vector<double>>(params.chains));
  std::vector<std::vector<double>> acceptance(np, std::vector<double>(params.chains, 0.0));
  const RandomStream root(params.seed);

  for_each_chain(params, [&](int c) {
    RandomStream rng = root.child(static_cast<std::uint64_t>(c));
    GaugeConfig config = GaugeConfig::random(geometry, group, rng);
    double epsilon = params.epsilon;
    for (std::size_t i = 0; i < np; ++i) {
      epsilon = thermalize(config, geometry, grid[i], epsilon, params, rng);
      auto& dst = samples[i][c];
      dst.reserve(params.sweeps);
      double acc = 0.0;
      for (int s = 0; s < params.sweeps; ++s) {
        acc += metropolis_sweep(config, geometry, grid[i], epsilon, params.hits, rng).acceptance;
        dst.push_back(wilson_action(config, geometry));
        if (s % 64 == 63) reunitarize(config, geometry);
      }
      acceptance[i][c] = acc / params.sweeps;
    }
  });

  auto integrate = [&](int half) {
    // half: -1 all samples, 0 first half, 1 second half
    std::vector<double> mean(np), err(np);
    for (std::size_t i = 0; i < np; ++i) {
      std::vector<std::vector<double>> chains;
      for (const auto& v : samples[i]) {
        if (half < 0) {
          chains.push_back(v);
        } else {
          const std::size_t h = v.size() / 2;
          chains.emplace_back(v.begin() + half * h, v.begin() + (half + 1) * h);
        }
      }
      const Estimate<double> e = batch_mean(chains, half < 0 ? params.batches : std::max(4, params.batches / 2));
      mean[i] = e.value;
      err[i] = e.error;
    }
    return std::pair{mean, err};
  };

  auto stat_error = [&](const std::vector<double>& err) {
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      const double left = i > 0 ? grid[i] - grid[i - 1] : 0.0;
      const double right = i + 1 < np ? grid[i + 1] - grid[i] : 0.0;
      const double w = 0.5 * (left + right);
      s += w * w * err[i] * err[i];
    }
    return std::sqrt(s);
  };

  const auto [mean, err] = integrate(-1);
  out.beta_grid = grid;
  out.mean_action = mean;
  out.mean_action_error = err;
  for (std::size_t i = 0; i < np; ++i) {
    double a = 0.0;
    for (double v : acceptance[i]) a += v;
    out.acceptance.push_back(a / params.chains);
  }
  out.value = -trapezoid(grid, mean);
  out.statistical_error = stat_error(err);
  if (np >= 3) {
    std::vector<double> cx, cy;
    for (std::size_t i : coarse_indices(np)) {
      cx.push_back(grid[i]);
      cy.push_back(mean[i]);
    }
    out.refinement_delta = std::abs(-trapezoid(cx, cy) - out.value);
  }
  out.error = std::hypot(out.statistical_error, out.refinement_delta / 3.0);

  const auto [m0, e0] = integrate(0);
  const auto [m1, e1] = integrate(1);
  out.split_difference = trapezoid(grid, m1) - trapezoid(grid, m0);
  const double split_sigma = std::hypot(stat_error(e0), stat_error(e1));
  if (std::abs(out.split_difference) > 5.0 * split_sigma + 1e-12) {
    throw UnconvergedChain("split-chain estimates differ by " + std::to_string(out.split_difference) + " (" +
                           std::to_string(out.split_difference / split_sigma) + " sigma)");
  }
  return out;
}

BoundReport verify_stability(const LatticeGeometry& geometry, const CouplingSpec& coupling, const GroupSpec& group,
                             const MCParams& params, const QuadratureSpec& q) {
  coupling.validate();
  if (coupling.d != geometry.dimension()) throw ShapeMismatch("coupling and lattice dimensions differ");
  const int d = geometry.dimension();
  const int L = geometry.extent();
  if (!((d <= 3 && L <= 6) || (d == 4 && L == 2)))
    throw InvalidLattice("Monte Carlo is limited to L <= 6 for d <= 3 and L = 2 for d = 4");
  const LatticeCounts counts = geometry.counts();
  BoundReport r;
  r.upper_exponent = counts.retained;
  r.lower_exponent = counts.retained + (geometry.boundary() == Boundary::Periodic ? counts.extra : 0);
  const double beta = coupling.beta();
  r.estimate = estimate_log_Z(geometry, beta, group, params);
  r.lower = r.lower_exponent * std::log(z_lower(beta, d, group, q).value);
  r.upper = r.upper_exponent * std::log(z_upper(beta, group, q).value);
  const double margin = 3.0 * r.estimate.error;
  r.verdict = r.lower <= r.estimate.value + margin && r.estimate.value - margin <= r.upper;
  return r;
}

double plaquette_field(const Matrix& up, const CouplingSpec& coupling, FieldVariant variant) {
  const double im_tr = up.trace().imag();
  switch (variant) {
    case FieldVariant::M: return std::sqrt(coupling.beta()) * im_tr;
    case FieldVariant::F: return im_tr / (coupling.a * coupling.a * coupling.g());
    default: return std::pow(coupling.a, coupling.d - 4) * plaquette_action(up) / coupling.g();
  }
}

double plaquette_field(const GaugeConfig& config, const LatticeGeometry& geometry, int plaquette,
                       const CouplingSpec& coupling, FieldVariant variant) {
  return plaquette_field(plaquette_matrix(config, geometry, plaquette), coupling, variant);
}

void SourceSpec::validate(const LatticeGeometry& geometry) const {
  if (plaquettes.empty()) throw ShapeMismatch("need at least one source");
  if (plaquettes.size() != strengths.size()) throw ShapeMismatch("one strength per source plaquette");
  for (int p : plaquettes)
    if (p < 0 || p >= static_cast<int>(geometry.plaquettes().size())) throw ShapeMismatch("plaquette out of range");
  for (const Complex& j : strengths)
    if (std::abs(j) > 3.0) throw InvalidCoupling("source strengths are limited to |J| <= 3");
}

FieldSamples sample_plaquette_fields(const LatticeGeometry& geometry, const CouplingSpec& coupling,
                                     const GroupSpec& group, std::span<const int> plaquettes, const MCParams& params) {
  params.validate();
  coupling.validate();
  if (plaquettes.empty()) throw ShapeMismatch("need at least one plaquette");
  FieldSamples out;
  out.sources = static_cast<int>(plaquettes.size());
  out.beta = coupling.beta();
  out.batches = params.batches;
  out.values.resize(params.chains);
  std::vector<double> acceptance(params.chains, 0.0);
  const RandomStream root(params.seed);
  const std::vector<int> plist(plaquettes.begin(), plaquettes.end());
  for_each_chain(params, [&](int c) {
    RandomStream rng = root.child(static_cast<std::uint64_t>(c));
    GaugeConfig config = GaugeConfig::random(geometry, group, rng);
    const double epsilon = thermalize(config, geometry, out.beta, params.epsilon, params, rng);
    auto& dst = out.values[c];
    dst.reserve(static_cast<std::size_t>(params.sweeps) * plist.size());
    double acc = 0.0;
    for (int s = 0; s < params.sweeps; ++s) {
      acc += metropolis_sweep(config, geometry, out.beta, epsilon, params.hits, rng).acceptance;
      for (int p : plist) dst.push_back(plaquette_field(config, geometry, p, coupling, FieldVariant::M));
      if (s % 64 == 63) reunitarize(config, geometry);
    }
    acceptance[c] = acc / params.sweeps;
  });
  out.acceptance = std::accumulate(acceptance.begin(), acceptance.end(), 0.0) / params.chains;
  return out;
}

Estimate<Complex> generating_function(const FieldSamples& samples, std::span<const Complex> strengths) {
  if (static_cast<int>(strengths.size()) != samples.sources) throw ShapeMismatch("one strength per recorded source");
  auto value = [&](std::span<const double> m) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) s += strengths[j] * m[j];
    return std::exp(s);
  };
  const Estimate<double> re =
      batch_mean(map_samples(samples, [&](std::span<const double> m) { return value(m).real(); }), samples.batches);
  const Estimate<double> im =
      batch_mean(map_samples(samples, [&](std::span<const double> m) { return value(m).imag(); }), samples.batches);
  return {Complex(re.value, im.value), std::hypot(re.error, im.error)};
}

Estimate<Complex> estimate_generating_function(const LatticeGeometry& geometry, const CouplingSpec& coupling,
                                               const GroupSpec& group, const SourceSpec& sources,
                                               const MCParams& params) {
  sources.validate(geometry);
  const FieldSamples s = sample_plaquette_fields(geometry, coupling, group, sources.plaquettes, params);
  return generating_function(s, sources.strengths);
}

CorrelationEstimate correlation_from_generating(const FieldSamples& samples, const CouplingSpec& coupling, double h,
                                                double tolerance) {
  const int r = samples.sources;
  if (r < 1 || r > 2) throw ShapeMismatch("finite differences support r = 1 or 2");
  if (!(h > 0.0)) throw StepTooLarge("step must be positive");
  auto difference = [r](std::span<const double> m, double step) {
    if (r == 1) return std::sinh(step * m[0]) / step;
    const double p = m[0] + m[1];
    const double q = m[0] - m[1];
    // [e^{h p} - e^{h q} - e^{-h q} + e^{-h p}] / (4 h^2)
    return (std::cosh(step * p) - std::cosh(step * q)) / (2.0 * step * step);
  };
  CorrelationEstimate out;
  out.coarse = batch_mean(map_samples(samples, [&](auto m) { return difference(m, h); }), samples.batches).value;
  out.fine = batch_mean(map_samples(samples, [&](auto m) { return difference(m, 0.5 * h); }), samples.batches).value;
  const Estimate<double> rich = batch_mean(
      map_samples(samples, [&](auto m) { return (4.0 * difference(m, 0.5 * h) - difference(m, h)) / 3.0; }),
      samples.batches);
  out.scaled = rich.value;
  out.error = rich.error;
  if (std::abs(out.coarse - out.fine) > tolerance * std::max(1.0, std::abs(out.fine))) {
    throw StepTooLarge("Richardson pair differs by " + std::to_string(std::abs(out.coarse - out.fine)));
  }
  const double scale = r == 2 ? std::pow(coupling.a, -coupling.d) : std::pow(coupling.a, -0.5 * coupling.d);
  out.physical = scale * out.scaled;
  out.physical_error = scale * out.error;
  return out;
}

GeneratingBoundReport verify_generating_bound(const LatticeGeometry& geometry, const CouplingSpec& coupling,
                                              const GroupSpec& group, const SourceSpec& sources,
                                              const MCParams& params, const QuadratureSpec& q) {
  if (geometry.boundary() != Boundary::Periodic) throw InvalidLattice("the generating bound needs periodic b.c.");
  if (coupling.d != geometry.dimension()) throw ShapeMismatch("coupling and lattice dimensions differ");
  sources.validate(geometry);
  const FieldSamples s = sample_plaquette_fields(geometry, coupling, group, sources.plaquettes, params);
  const Estimate<Complex> g = generating_function(s, sources.strengths);
  GeneratingBoundReport out;
  out.abs_g = std::abs(g.value);
  out.error = g.error;
  const Estimate<double> mean = batch_mean(map_samples(s, [](auto m) { return m[0]; }), s.batches);
  out.mean_field = mean.value;
  out.mean_field_error = mean.error;

  const LatticeCounts c = geometry.counts();
  const double r = static_cast<double>(sources.plaquettes.size());
  const double two_d = std::ldexp(1.0, geometry.dimension());
  const double e_upper = two_d * c.retained / (r * c.sites);
  const double e_lower = two_d * (c.retained + c.extra) / (r * c.sites);
  const double beta = coupling.beta();
  out.log_rhs = -e_lower * std::log(z_lower(beta, geometry.dimension(), group, q).value);
  for (const Complex& j : sources.strengths)
    out.log_rhs += e_upper * std::log(z_upper_source_modulus(r * std::abs(j), beta, group, q).value);
  out.rhs = std::exp(out.log_rhs);
  out.verdict = out.abs_g - 3.0 * out.error <= out.rhs;
  return out;
}

}  // namespace ymlab
