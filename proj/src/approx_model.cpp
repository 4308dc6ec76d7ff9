#include "ymlab/approx_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ymlab {

namespace {

constexpr double kPi = std::numbers::pi;

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// int_{-u}^{u} e^{-c x^2} dx and int_{-u}^{u} x^2 e^{-c x^2} dx
double gauss0(double c, double u) { return std::sqrt(kPi / c) * std::erf(std::sqrt(c) * u); }
double gauss2(double c, double u) {
  const double tail = std::isfinite(u) ? 2.0 * u * std::exp(-c * u * u) : 0.0;
  return (gauss0(c, u) - tail) / (2.0 * c);
}

CouplingSpec sequence_point(const CouplingSpec& base, int k) {
  CouplingSpec c = base;
  const double f = std::ldexp(1.0, -k);
  if (base.d == 4) {
    c.g2 = base.g2 * f;
  } else {
    c.a = f;
  }
  return c;
}

template <class F>
LimitSequence build_sequence(const CouplingSpec& base, int k_max, double tolerance, F&& eval) {
  base.validate();
  LimitSequence s;
  for (int k = 0; k <= k_max; ++k) {
    const CouplingSpec c = sequence_point(base, k);
    const Estimate<double> e = eval(c);
    s.parameter.push_back(base.d == 4 ? c.g2 : c.a);
    s.beta.push_back(c.beta());
    s.values.push_back(e.value);
    s.errors.push_back(e.error);
  }
  std::vector<double> h;
  for (double b : s.beta) h.push_back(1.0 / b);
  s.extrapolated = extrapolate_to_zero(h, s.values, std::min<int>(5, static_cast<int>(h.size())), &s.extrapolation_error);
  const std::size_t n = s.values.size();
  s.cauchy = n >= 2;
  if (n >= 2) {
    const double last = std::abs(s.values[n - 1] - s.values[n - 2]);
    s.cauchy = last <= tolerance;
    for (std::size_t i = (n >= 4 ? n - 3 : 1); i + 1 < n; ++i) {
      const double d0 = std::abs(s.values[i] - s.values[i - 1]);
      const double d1 = std::abs(s.values[i + 1] - s.values[i]);
      // Differences already at round-off level need not keep shrinking.
      if (d1 > d0 && d1 > 1e-11 * std::max(1.0, std::abs(s.values[i]))) s.cauchy = false;
    }
  }
  return s;
}

}  // namespace

LatticeCounts lattice_counts(int d, int L) {
  if (d < 2 || d > 4) throw InvalidLattice("d must be 2, 3 or 4");
  if (L < 2 || L % 2 != 0) throw InvalidLattice("L must be even and at least 2");
  LatticeCounts c;
  c.sites = ipow(L, d);
  c.bonds = d * (L - 1) * ipow(L, d - 1);
  c.extra = d * ipow(L, d - 1);
  const long long m = L - 1;
  switch (d) {
    case 2: c.retained = m * m; break;
    case 3: c.retained = (2LL * L + 1) * m * m; break;
    default: c.retained = (3LL * L * L * L - 1LL * L * L - L - 1) * m; break;
  }
  c.plaquettes = d * (d - 1) / 2 * m * m * ipow(L, d - 2);
  return c;
}

Estimate<double> normalized_free_energy(const CouplingSpec& coupling, const GroupSpec& group,
                                        const QuadratureSpec& q) {
  coupling.validate();
  const double beta = coupling.beta();
  const Estimate<double> z = z_upper(beta, group, q);
  const double n2 = static_cast<double>(group.dimension());
  return {0.5 * n2 * std::log(beta) + std::log(z.value), z.error / z.value};
}

Estimate<double> approx_log_partition_normalized(int L, const CouplingSpec& coupling, const GroupSpec& group,
                                                 const QuadratureSpec& q) {
  const LatticeCounts c = lattice_counts(coupling.d, L);
  const Estimate<double> f = normalized_free_energy(coupling, group, q);
  const double r = static_cast<double>(c.retained);
  return {r * f.value, r * f.error};
}

double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v, int order, double* error) {
  const std::size_t n = h.size();
  if (n == 0 || v.size() != n) throw ShapeMismatch("extrapolation needs matching non-empty sequences");
  order = std::clamp<int>(order, 1, static_cast<int>(n));
  // Neville's scheme on the last `order` points, evaluated at h = 0.
  std::vector<double> hh(h.end() - order, h.end());
  std::vector<double> p(v.end() - order, v.end());
  double previous = p.back();
  for (int m = 1; m < order; ++m) {
    for (int i = 0; i + m < order; ++i) {
      p[i] = (hh[i + m] * p[i] - hh[i] * p[i + 1]) / (hh[i + m] - hh[i]);
    }
    if (m == order - 1) break;
    previous = p[order - m - 1];
  }
  if (error != nullptr) *error = order > 1 ? std::abs(p[0] - previous) : 0.0;
  return p[0];
}

LimitSequence normalized_free_energy_limit(const CouplingSpec& base, const GroupSpec& group, int k_max,
                                           const QuadratureSpec& q, double tolerance) {
  return build_sequence(base, k_max, tolerance,
                        [&](const CouplingSpec& c) { return normalized_free_energy(c, group, q); });
}

Estimate<double> plaquette_moment(int alpha, const CouplingSpec& coupling, const GroupSpec& group,
                                  const QuadratureSpec& q) {
  coupling.validate();
  if (alpha < 0) throw InvalidCoupling("moment order must be non-negative");
  const double beta = coupling.beta();
  const double sb = std::sqrt(beta);
  auto weight = [beta](std::span<const double> l) {
    double s = 0.0;
    for (double v : l) s += one_minus_cos(v);
    return std::exp(-2.0 * beta * s);
  };
  auto num = [&](std::span<const double> l) {
    double s = 0.0;
    for (double v : l) s += std::sin(v);
    return std::pow(sb * s, alpha) * weight(l);
  };
  const double w = source_truncation_width(beta, 0.0);
  const Estimate<double> top = weyl_integrate(num, group, q, w);
  const Estimate<double> bottom = weyl_integrate(weight, group, q, w);
  const double value = top.value / bottom.value;
  return {value, top.error / bottom.value + std::abs(value) * bottom.error / bottom.value};
}

Estimate<double> physical_coincident_correlation(int alpha, const CouplingSpec& coupling, const GroupSpec& group,
                                                 const QuadratureSpec& q) {
  const Estimate<double> m = plaquette_moment(alpha, coupling, group, q);
  const double scale = std::pow(coupling.a, -0.5 * coupling.d * alpha);
  return {scale * m.value, scale * m.error};
}

LimitSequence plaquette_moment_limit(int alpha, const CouplingSpec& base, const GroupSpec& group, int k_max,
                                     const QuadratureSpec& q, double tolerance) {
  return build_sequence(base, k_max, tolerance,
                        [&](const CouplingSpec& c) { return plaquette_moment(alpha, c, group, q); });
}

Estimate<double> gaussian_moment(int alpha, const GroupSpec& group, const QuadratureSpec& q) {
  if (alpha < 0) throw InvalidCoupling("moment order must be non-negative");
  const int n = group.rank();
  const double width = std::sqrt(42.0 + 2.0 * n * (n - 1) + alpha) + 2.0;
  auto weight = [](std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return std::exp(-s) * flat_vandermonde(y);
  };
  auto num = [alpha](std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v;
    return std::pow(s, alpha);
  };
  auto one = [](std::span<const double>) { return 1.0; };
  const Estimate<double> top = detail::box_integrate(num, weight, n, q, width, 1.0);
  const Estimate<double> bottom = detail::box_integrate(one, weight, n, q, width, 1.0);
  const double value = top.value / bottom.value;
  return {value, top.error / bottom.value + std::abs(value) * bottom.error / bottom.value};
}

GaussianityReport gaussianity_report(const GroupSpec& group, const QuadratureSpec& q) {
  const Estimate<double> t2 = gaussian_moment(2, group, q);
  const Estimate<double> t4 = gaussian_moment(4, group, q);
  GaussianityReport r;
  r.rank = group.rank();
  r.t2 = t2.value;
  r.t4 = t4.value;
  r.excess = t4.value - 3.0 * t2.value * t2.value;
  r.error = t4.error + 6.0 * std::abs(t2.value) * t2.error;
  return r;
}

MomentBounds u1_moment_bounds(const CouplingSpec& coupling) {
  coupling.validate();
  const double beta = coupling.beta();
  const double u = kPi * std::sqrt(beta);
  const double u0 = kPi * std::sqrt(beta * coupling.g2 / coupling.g0_2);
  const double c = 4.0 / (kPi * kPi);
  MomentBounds b;
  b.upper = gauss2(c, u) / gauss0(1.0, u0);
  b.lower = c * gauss2(1.0, 0.5 * u) / std::sqrt(kPi / c);
  return b;
}

}  // namespace ymlab
