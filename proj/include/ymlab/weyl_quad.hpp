#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "ymlab/errors.hpp"
#include "ymlab/estimate.hpp"
#include "ymlab/group_core.hpp"
#include "ymlab/rng.hpp"

namespace ymlab {

enum class QuadratureMethod { TensorGaussLegendre, QuasiRandom, MonteCarlo };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::TensorGaussLegendre;
  int resolution = 96;              // nodes per dimension (tensor)
  std::uint64_t samples = 1 << 20;  // points (stochastic methods)
  std::uint64_t seed = 0;
  double tolerance = 1e-9;          // relative to the integral of |f|

  void validate(int dims) const;
};

// Rule on [lo, hi]; Newton iteration on Legendre polynomials.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n, double lo, double hi);
// Two n/2-point panels on [-w, 0] and [0, w]; keeps kinks at 0 off the nodes' interior.
GaussLegendreRule split_rule(int n, double half_width);

// prod_{j<k} 2 [1 - cos(l_j - l_k)]
double vandermonde_density(std::span<const double> lambda);
// prod_{j<k} (l_j - l_k)^2
double flat_vandermonde(std::span<const double> lambda);

struct EnsembleConstants {
  double circular;             // (2 pi)^N N!
  double gaussian_unitary;     // I_2(inf)
  double gaussian_symplectic;  // I_4(inf)
};
EnsembleConstants ensemble_constants(const GroupSpec& group);

namespace detail {

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

// Sum_{grid} w * f(x) * weight(x) over a tensor product of one rule.
template <class F, class W>
auto tensor_sum(F& f, W& weight, int dims, const GaussLegendreRule& rule, double* abs_sum) {
  using T = std::decay_t<decltype(f(std::span<const double>{}))>;
  const int n = static_cast<int>(rule.nodes.size());
  std::vector<int> idx(dims, 0);
  std::vector<double> x(dims, rule.nodes[0]);
  T total{};
  double mag = 0.0;
  while (true) {
    double w = 1.0;
    for (int k = 0; k < dims; ++k) w *= rule.weights[idx[k]];
    const std::span<const double> pt(x);
    const double dens = weight(pt);
    if (dens != 0.0) {
      const T v = f(pt);
      total += v * (w * dens);
      mag += magnitude(v) * w * dens;
    }
    int k = 0;
    for (; k < dims; ++k) {
      if (++idx[k] < n) {
        x[k] = rule.nodes[idx[k]];
        break;
      }
      idx[k] = 0;
      x[k] = rule.nodes[0];
    }
    if (k == dims) break;
  }
  if (abs_sum != nullptr) *abs_sum = mag;
  return total;
}

// Generalized golden-ratio additive recurrence in `dims` dimensions.
std::vector<double> kronecker_alphas(int dims);

// Integral of f * weight over [-w, w]^dims, divided by norm.
template <class F, class W>
auto box_integrate(F&& f, W&& weight, int dims, const QuadratureSpec& q, double half_width, double norm) {
  using T = std::decay_t<decltype(f(std::span<const double>{}))>;
  q.validate(dims);
  Estimate<T> out;
  if (q.method == QuadratureMethod::TensorGaussLegendre) {
    const int fine_n = q.resolution + (q.resolution % 2);
    int coarse_n = (3 * fine_n) / 4;
    coarse_n += coarse_n % 2;
    double mag = 0.0;
    const T fine = tensor_sum(f, weight, dims, split_rule(fine_n, half_width), &mag) / norm;
    const T coarse = tensor_sum(f, weight, dims, split_rule(coarse_n, half_width), nullptr) / norm;
    out.value = fine;
    out.error = std::abs(fine - coarse);
    mag /= norm;
    if (out.error > q.tolerance * (mag + std::numeric_limits<double>::min())) {
      throw ResolutionTooLow("two-resolution difference " + std::to_string(out.error) + " exceeds tolerance " +
                             std::to_string(q.tolerance) + " x " + std::to_string(mag));
    }
    return out;
  }
  RandomStream rng(q.seed);
  const std::vector<double> alpha = kronecker_alphas(dims);
  std::vector<double> shift(dims), x(dims);
  for (auto& s : shift) s = rng.uniform();
  const double volume = std::pow(2.0 * half_width, dims);
  T sum{};
  double sum_sq = 0.0;
  double mag = 0.0;
  for (std::uint64_t i = 0; i < q.samples; ++i) {
    for (int k = 0; k < dims; ++k) {
      double u;
      if (q.method == QuadratureMethod::QuasiRandom) {
        u = shift[k] + alpha[k] * static_cast<double>(i + 1);
        u -= std::floor(u);
      } else {
        u = rng.uniform();
      }
      x[k] = half_width * (2.0 * u - 1.0);
    }
    const std::span<const double> pt(x);
    const double dens = weight(pt);
    const T v = dens == 0.0 ? T{} : f(pt) * dens;
    sum += v;
    sum_sq += std::norm(v);
    mag += std::abs(v);
  }
  const double ns = static_cast<double>(q.samples);
  const T mean = sum / ns;
  const double var = std::max(0.0, sum_sq / ns - std::norm(mean));
  out.value = mean * volume / norm;
  out.error = std::sqrt(var / ns) * volume / norm;
  mag *= volume / (ns * norm);
  if (out.error > q.tolerance * (mag + std::numeric_limits<double>::min())) {
    throw ResolutionTooLow("sampling error " + std::to_string(out.error) + " exceeds tolerance");
  }
  return out;
}

}  // namespace detail

// (1 / N_C) int f(l) rho(l) d^N l over [-w, w]^N, w <= pi. The integrand is
// assumed negligible outside the box when w < pi.
template <class F>
auto weyl_integrate(F&& f, const GroupSpec& group, const QuadratureSpec& q = {},
                    double half_width = std::numbers::pi) {
  const double w = std::min(half_width, std::numbers::pi);
  const double nc = ensemble_constants(group).circular;
  auto rho = [](std::span<const double> l) { return vandermonde_density(l); };
  return detail::box_integrate(std::forward<F>(f), rho, group.rank(), q, w, nc);
}

// I_beta(u) = int_{(-u,u)^N} exp(-beta/2 sum y^2) rhohat^{beta/2} dy for beta
// in {2, 4}. u = infinity is truncated where the integrand is below 1e-18 of
// its scale.
Estimate<double> i_beta(int beta, double u, const GroupSpec& group, const QuadratureSpec& q = {});

}  // namespace ymlab
