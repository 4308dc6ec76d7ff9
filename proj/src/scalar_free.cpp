#include "ymlab/scalar_free.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "ymlab/weyl_quad.hpp"

namespace ymlab {

namespace {

constexpr double kPi = std::numbers::pi;

int default_points(int d, const MomentumQuadrature& q) {
  if (q.points > 0) return q.points + (q.points % 2);
  return d <= 3 ? 128 : 48;
}

Site difference(const ScalarSpec& spec, const Site& x, const Site& y) {
  if (static_cast<int>(x.size()) != spec.d || static_cast<int>(y.size()) != spec.d)
    throw ShapeMismatch("site has wrong dimension");
  Site n(spec.d);
  for (int k = 0; k < spec.d; ++k) n[k] = x[k] - y[k];
  return n;
}

// Integrand over the remaining momenta q' after the closed-form q_0 integral,
// already folded onto [0, pi]^{d-1}:
//   t^{|n_0|} prod cos(q_k n_k) / sqrt(A^2 - B^2)
struct Reduced {
  double kappa2;
  double gap;  // 1 - 2 d kappa^2 = kappa^2 r
  Site n;

  double operator()(std::span<const double> qp) const {
    const double b = 2.0 * kappa2;
    double s = 0.0;
    double c = 1.0;
    for (std::size_t k = 0; k < qp.size(); ++k) {
      const double h = std::sin(0.5 * qp[k]);
      s += h * h;
      c *= std::cos(qp[k] * n[k + 1]);
    }
    const double a_minus_b = gap + 4.0 * kappa2 * s;
    // Massless q' -> 0: integrable singularity; tanh-sinh can land on it after underflow.
    if (!(a_minus_b > 1e-300)) return 0.0;
    const double a_plus_b = a_minus_b + 2.0 * b;
    const double root = std::sqrt(a_minus_b * a_plus_b);
    const double a = a_minus_b + b;
    const double t = b / (a + root);
    return std::pow(t, std::abs(n[0])) * c / root;
  }
};

double tensor_box(const std::function<double(std::span<const double>)>& f, int dims, const GaussLegendreRule& rule) {
  auto one = [](std::span<const double>) { return 1.0; };
  auto ff = f;
  return detail::tensor_sum(ff, one, dims, rule, nullptr);
}

double nested_tanh_sinh(const Reduced& f, int dims, double tol) {
  boost::math::quadrature::tanh_sinh<double> ts(15);
  std::vector<double> q(dims, 0.0);
  std::function<double(int)> level = [&](int k) -> double {
    if (k == dims) return f(std::span<const double>(q));
    auto g = [&, k](double v) {
      q[k] = v;
      return level(k + 1);
    };
    return ts.integrate(g, 0.0, kPi, tol);
  };
  return level(0);
}

}  // namespace

void ScalarSpec::validate() const {
  if (d < 2 || d > 4) throw InvalidCoupling("scalar d must be 2, 3 or 4");
  if (!(a > 0.0 && a <= 1.0)) throw InvalidCoupling("a must lie in (0, 1]");
  if (!(m_u >= 0.0) || !std::isfinite(m_u)) throw InvalidCoupling("m_u must be non-negative");
  if (!(kappa_u > 0.0) || !std::isfinite(kappa_u)) throw InvalidCoupling("kappa_u must be positive");
}

double scaling_factor_squared(const ScalarSpec& spec) {
  spec.validate();
  return std::pow(spec.a, spec.d - 2) * (spec.m_u * spec.m_u * spec.a * spec.a + 2.0 * spec.d * spec.kappa_u * spec.kappa_u);
}

double scaling_factor(const ScalarSpec& spec) { return std::sqrt(scaling_factor_squared(spec)); }

double kappa2(const ScalarSpec& spec) {
  spec.validate();
  const double r = spec.m_u * spec.a / spec.kappa_u;
  return 1.0 / (2.0 * spec.d + r * r);
}

Estimate<double> scaled_propagator(const ScalarSpec& spec, const Site& x, const Site& y, const MomentumQuadrature& q) {
  spec.validate();
  if (spec.d == 2 && spec.m_u == 0.0) throw InfraredDivergent("the massless propagator diverges in d = 2");
  const double k2 = kappa2(spec);
  const double r = spec.m_u * spec.a / spec.kappa_u;
  const Reduced f{k2, k2 * r * r, difference(spec, x, y)};
  const int dims = spec.d - 1;
  // (2 pi)^{-d} * 2 pi * 2^{d-1} from the q_0 integral and the fold onto [0, pi].
  const double norm = 1.0 / std::pow(kPi, dims);
  Estimate<double> out;
  if (spec.m_u > 0.0) {
    const int n = default_points(spec.d, q);
    int coarse = (3 * n) / 4;
    coarse += coarse % 2;
    const double fine = norm * tensor_box(f, dims, gauss_legendre(n, 0.0, kPi));
    const double low = norm * tensor_box(f, dims, gauss_legendre(coarse, 0.0, kPi));
    out = {fine, std::abs(fine - low)};
  } else {
    const double fine = norm * nested_tanh_sinh(f, dims, 1e-10);
    const double low = norm * nested_tanh_sinh(f, dims, 1e-7);
    out = {fine, std::abs(fine - low)};
  }
  if (out.error > q.tolerance * std::abs(out.value)) {
    throw ResolutionTooLow("propagator two-resolution difference " + std::to_string(out.error));
  }
  return out;
}

Estimate<double> unscaled_propagator(const ScalarSpec& spec, const Site& x, const Site& y,
                                     const MomentumQuadrature& q) {
  const Estimate<double> c = scaled_propagator(spec, x, y, q);
  const double s2 = scaling_factor_squared(spec);
  return {c.value / s2, c.error / s2};
}

Estimate<double> massless_coincident_value(int d, const MomentumQuadrature& q) {
  if (d < 3 || d > 4) throw InfraredDivergent("C_0 is finite only for d = 3, 4");
  const ScalarSpec spec{d, 1.0, 0.0, 1.0};
  return scaled_propagator(spec, Site(d, 0), Site(d, 0), q);
}

Estimate<double> derivative_correlation(const ScalarSpec& spec, int mu, int nu, const Site& x, const Site& y,
                                        const MomentumQuadrature& q) {
  spec.validate();
  const int d = spec.d;
  if (mu < 0 || mu >= d || nu < 0 || nu >= d) throw ShapeMismatch("direction out of range");
  const Site n = difference(spec, x, y);
  const double k2u = spec.kappa_u * spec.kappa_u;
  const double mass = spec.m_u * spec.a;
  const double m2 = mass * mass;

  auto evaluate = [&](int points) {
    const GaussLegendreRule rule = split_rule(points, kPi);
    const std::size_t np = rule.nodes.size();
    // Per-axis tables: phases e^{i q n_k}, 1 - cos q, e^{i q}.
    std::vector<std::vector<Complex>> phase(d, std::vector<Complex>(np));
    std::vector<double> omc(np);
    std::vector<Complex> eiq(np);
    for (std::size_t i = 0; i < np; ++i) {
      const double v = rule.nodes[i];
      omc[i] = one_minus_cos(v);
      eiq[i] = std::polar(1.0, v);
      for (int k = 0; k < d; ++k) phase[k][i] = std::polar(1.0, v * n[k]);
    }
    std::vector<int> idx(d, 0);
    double total = 0.0;
    while (true) {
      double w = 1.0;
      double s = 0.0;
      Complex ph = 1.0;
      for (int k = 0; k < d; ++k) {
        w *= rule.weights[idx[k]];
        s += omc[idx[k]];
        ph *= phase[k][idx[k]];
      }
      const Complex num = ph * (eiq[idx[mu]] - 1.0) * (std::conj(eiq[idx[nu]]) - 1.0);
      total += w * num.real() / (2.0 * k2u * s + m2);
      int k = 0;
      for (; k < d; ++k) {
        if (++idx[k] < static_cast<int>(np)) break;
        idx[k] = 0;
      }
      if (k == d) break;
    }
    return total / (std::pow(spec.a, d) * std::pow(2.0 * kPi, d));
  };
  const int n_fine = default_points(d, q);
  int n_coarse = (3 * n_fine) / 4;
  n_coarse += n_coarse % 2;
  const double fine = evaluate(n_fine);
  return {fine, std::abs(fine - evaluate(n_coarse))};
}

Estimate<double> scaled_derivative_correlation(const ScalarSpec& spec, int mu, int nu, const Site& x, const Site& y,
                                               const MomentumQuadrature& q) {
  const Estimate<double> g = derivative_correlation(spec, mu, nu, x, y, q);
  const double s2 = scaling_factor_squared(spec);
  return {s2 * g.value, s2 * g.error};
}

double massless_derivative_coincident(const ScalarSpec& spec) {
  spec.validate();
  return 1.0 / (spec.d * spec.kappa_u * spec.kappa_u * std::pow(spec.a, spec.d));
}

double mass_gap(const ScalarSpec& spec) {
  spec.validate();
  return mass_gap<double>(spec.a, spec.m_u, spec.kappa_u);
}

double mass_gap_log_form(const ScalarSpec& spec) {
  spec.validate();
  const double x = spec.m_u * spec.a / spec.kappa_u;
  const double r = x * x;
  return (2.0 / spec.a) * std::log(0.5 * std::sqrt(r) + 0.5 * std::sqrt(4.0 + r));
}

DecayFit fit_decay_rate(const ScalarSpec& spec, int direction, int first, int last, bool unscaled) {
  spec.validate();
  if (!(spec.m_u > 0.0)) throw RangeTooNoisy("decay fits need m_u > 0");
  if (direction < 0 || direction >= spec.d) throw ShapeMismatch("direction out of range");
  const double ma = mass_gap(spec) * spec.a;
  const double scale = unscaled ? scaling_factor_squared(spec) : 1.0;
  auto value_at = [&](int n) {
    Site x(spec.d, 0);
    x[direction] = n;
    return scaled_propagator(spec, x, Site(spec.d, 0)).value / scale;
  };
  if (first <= 0) first = std::max(2, static_cast<int>(std::ceil(5.0 / ma)));
  if (last <= 0) {
    last = first;
    while (last < first + 60 && value_at(last + 1) * scale > 1e-14) ++last;
  }
  if (last - first < 4) throw RangeTooNoisy("fewer than five separations above 1e-14");

  const int m = last - first + 1;
  Eigen::MatrixXd design(m, 4);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    const int n = first + i;
    const double c = value_at(n);
    if (!(c > 0.0)) throw RangeTooNoisy("non-positive propagator value in range");
    design(i, 0) = 1.0;
    design(i, 1) = -static_cast<double>(n);
    design(i, 2) = -std::log(static_cast<double>(n));
    design(i, 3) = 1.0 / n;
    rhs(i) = std::log(c);
  }
  const Eigen::Vector4d coef = design.colPivHouseholderQr().solve(rhs);
  DecayFit fit;
  fit.rate = coef(1) / spec.a;
  fit.prefactor_power = coef(2);
  fit.first = first;
  fit.last = last;
  fit.max_residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  if (fit.max_residual > 1e-3) throw RangeTooNoisy("fit residual " + std::to_string(fit.max_residual));
  return fit;
}

GaussianGenerating gaussian_generating_function(const ScalarSpec& spec, const std::vector<Site>& sites,
                                                const std::vector<double>& strengths) {
  if (sites.size() != strengths.size()) throw ShapeMismatch("one strength per source site");
  GaussianGenerating out;
  double quad = 0.0;
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < sites.size(); ++j) {
    sum_sq += strengths[j] * strengths[j];
    for (std::size_t k = 0; k < sites.size(); ++k)
      quad += strengths[j] * scaled_propagator(spec, sites[j], sites[k]).value * strengths[k];
  }
  out.value = std::exp(0.5 * quad);
  if (spec.d >= 3) {
    const double c0 = massless_coincident_value(spec.d).value;
    out.bound = std::exp(c0 * static_cast<double>(sites.size()) * sum_sq);
    out.holds = out.value <= out.bound * (1.0 + 1e-12);
  } else {
    out.bound = std::numeric_limits<double>::infinity();
    out.holds = true;
  }
  return out;
}

Eigen::MatrixXd finite_volume_propagator(const ScalarSpec& spec, int L) {
  spec.validate();
  if (spec.d != 2) throw ShapeMismatch("finite-volume propagator is implemented for d = 2");
  if (L < 2 || L % 2 != 0) throw InvalidLattice("L must be even and at least 2");
  const int n = L * L;
  const double k2 = kappa2(spec);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (int x0 = 0; x0 < L; ++x0) {
    for (int x1 = 0; x1 < L; ++x1) {
      const int s = x0 + L * x1;
      const int t0 = (x0 + 1) % L + L * x1;
      const int t1 = x0 + L * ((x1 + 1) % L);
      m(s, t0) -= k2;
      m(t0, s) -= k2;
      m(s, t1) -= k2;
      m(t1, s) -= k2;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0) throw InfraredDivergent("quadratic form is not positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace ymlab
