#include "ymlab/weyl_quad.hpp"

#include <algorithm>
#include <cmath>

namespace ymlab {

void QuadratureSpec::validate(int dims) const {
  if (method == QuadratureMethod::TensorGaussLegendre) {
    if (dims > 4) throw ResolutionTooLow("tensor Gauss-Legendre is limited to 4 dimensions");
    if (resolution < 8) throw ResolutionTooLow("resolution must be at least 8 nodes per dimension");
  } else if (samples < 1000) {
    throw ResolutionTooLow("stochastic quadrature needs at least 1000 samples");
  }
  if (!(tolerance > 0.0)) throw ResolutionTooLow("tolerance must be positive");
}

GaussLegendreRule gauss_legendre(int n, double lo, double hi) {
  GaussLegendreRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = mid - half * z;
    r.nodes[n - 1 - i] = mid + half * z;
    r.weights[i] = r.weights[n - 1 - i] = half * w;
  }
  return r;
}

GaussLegendreRule split_rule(int n, double half_width) {
  const int m = std::max(1, n / 2);
  GaussLegendreRule left = gauss_legendre(m, -half_width, 0.0);
  const GaussLegendreRule right = gauss_legendre(m, 0.0, half_width);
  left.nodes.insert(left.nodes.end(), right.nodes.begin(), right.nodes.end());
  left.weights.insert(left.weights.end(), right.weights.begin(), right.weights.end());
  return left;
}

double vandermonde_density(std::span<const double> lambda) {
  double p = 1.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k) p *= 2.0 * one_minus_cos(lambda[j] - lambda[k]);
  return p;
}

double flat_vandermonde(std::span<const double> lambda) {
  double p = 1.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k) {
      const double d = lambda[j] - lambda[k];
      p *= d * d;
    }
  return p;
}

EnsembleConstants ensemble_constants(const GroupSpec& group) {
  const int n = group.rank();
  const double two_pi = 2.0 * std::numbers::pi;
  EnsembleConstants c{};
  c.circular = std::pow(two_pi, n) * std::tgamma(n + 1.0);
  double log_g = 0.5 * n * std::log(two_pi) - 0.5 * n * n * std::log(2.0);
  double log_s = 0.5 * n * std::log(two_pi) - n * n * std::log(4.0);
  for (int j = 1; j <= n; ++j) {
    log_g += std::lgamma(j + 1.0);
    log_s += std::lgamma(2.0 * j + 1.0);
  }
  c.gaussian_unitary = std::exp(log_g);
  c.gaussian_symplectic = std::exp(log_s);
  return c;
}

namespace detail {

std::vector<double> kronecker_alphas(int dims) {
  // phi_d is the positive root of x^{d+1} = x + 1.
  double phi = 2.0;
  for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / (dims + 1));
  std::vector<double> a(dims);
  for (int k = 0; k < dims; ++k) a[k] = std::fmod(std::pow(1.0 / phi, k + 1), 1.0);
  return a;
}

}  // namespace detail

Estimate<double> i_beta(int beta, double u, const GroupSpec& group, const QuadratureSpec& q) {
  if (beta != 2 && beta != 4) throw InvalidCoupling("ensemble index must be 2 or 4");
  if (!(u > 0.0)) throw InvalidCoupling("cutoff u must be positive");
  const int n = group.rank();
  // exp(-beta/2 y^2) times a polynomial of degree beta (N-1) per coordinate.
  const double tail = 2.0 * (42.0 + 2.0 * beta * (n - 1)) / beta;
  const double width = std::min(u, std::sqrt(tail) + 2.0);
  const double half_beta = 0.5 * beta;
  auto f = [](std::span<const double>) { return 1.0; };
  auto weight = [=](std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return std::exp(-half_beta * s) * std::pow(flat_vandermonde(y), half_beta);
  };
  return detail::box_integrate(f, weight, n, q, width, 1.0);
}

}  // namespace ymlab
