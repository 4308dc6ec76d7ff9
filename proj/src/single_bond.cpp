#include "ymlab/single_bond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ymlab {

namespace {

constexpr double kPi = std::numbers::pi;

double sum_one_minus_cos(std::span<const double> l) {
  double s = 0.0;
  for (double v : l) s += one_minus_cos(v);
  return s;
}

}  // namespace

double CouplingSpec::beta() const { return std::pow(a, d - 4) / g2; }

double CouplingSpec::g() const { return std::sqrt(g2); }

void CouplingSpec::validate() const {
  if (d < 2 || d > 4) throw InvalidCoupling("d must be 2, 3 or 4");
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidCoupling("a must be positive");
  if (!(g2 > 0.0) || !std::isfinite(g2)) throw InvalidCoupling("g^2 must be positive");
  if (!(g0_2 >= g2)) throw InvalidCoupling("g^2 must not exceed g0^2");
}

CouplingSpec CouplingSpec::with_beta(double beta, int d, double g0_2) {
  if (!(beta > 0.0)) throw InvalidCoupling("beta must be positive");
  CouplingSpec c;
  c.d = d;
  c.a = 1.0;
  c.g2 = 1.0 / beta;
  c.g0_2 = std::max(g0_2, c.g2);
  return c;
}

double source_truncation_width(double beta, double abs_j) {
  // |J| t - (4/pi^2) t^2 <= -45 with t = sqrt(beta) |l|.
  const double c = 4.0 / (kPi * kPi);
  const double t = (abs_j + std::sqrt(abs_j * abs_j + 4.0 * c * 45.0)) / (2.0 * c);
  return std::min(kPi, t / std::sqrt(beta));
}

Estimate<double> z_upper(double beta, const GroupSpec& group, const QuadratureSpec& q) {
  if (!(beta > 0.0)) throw InvalidCoupling("beta must be positive");
  auto f = [beta](std::span<const double> l) { return std::exp(-2.0 * beta * sum_one_minus_cos(l)); };
  return weyl_integrate(f, group, q, source_truncation_width(beta, 0.0));
}

Estimate<double> z_lower(double beta, int d, const GroupSpec& group, const QuadratureSpec& q) {
  if (!(beta > 0.0)) throw InvalidCoupling("beta must be positive");
  const double k = 2.0 * plaquette_constant(group) * (d - 1) * beta;
  auto f = [k](std::span<const double> l) {
    double s = 0.0;
    for (double v : l) s += v * v;
    return std::exp(-k * s);
  };
  return weyl_integrate(f, group, q, std::min(kPi, std::sqrt(45.0 / k)));
}

Estimate<Complex> z_upper_with_source(Complex j, double beta, const GroupSpec& group, const QuadratureSpec& q) {
  if (!(beta > 0.0)) throw InvalidCoupling("beta must be positive");
  const Complex js = j * std::sqrt(beta);
  auto f = [js, beta](std::span<const double> l) {
    double s = 0.0;
    for (double v : l) s += std::sin(v);
    return std::exp(js * s - 2.0 * beta * sum_one_minus_cos(l));
  };
  return weyl_integrate(f, group, q, source_truncation_width(beta, std::abs(j)));
}

Estimate<double> z_upper_source_modulus(double abs_j, double beta, const GroupSpec& group, const QuadratureSpec& q) {
  if (!(beta > 0.0)) throw InvalidCoupling("beta must be positive");
  const double js = std::abs(abs_j) * std::sqrt(beta);
  auto f = [js, beta](std::span<const double> l) {
    double s = 0.0;
    for (double v : l) s += std::abs(std::sin(v));
    return std::exp(js * s - 2.0 * beta * sum_one_minus_cos(l));
  };
  return weyl_integrate(f, group, q, source_truncation_width(beta, std::abs(abs_j)));
}

BoundConstants bound_constants(const CouplingSpec& coupling, const GroupSpec& group, const QuadratureSpec& q) {
  coupling.validate();
  const int n = group.rank();
  const double n2 = static_cast<double>(n) * n;
  const EnsembleConstants e = ensemble_constants(group);
  const double kappa = 2.0 * (coupling.d - 1) * plaquette_constant(group);
  BoundConstants b{};
  b.c_upper = n2 * std::log(kPi / 2.0) + std::log(e.gaussian_unitary) - std::log(e.circular);
  const double u_min = kPi * std::sqrt(kappa) / (2.0 * std::sqrt(coupling.g0_2));
  b.i_lower = i_beta(2, u_min, group, q).value;
  b.c_lower = -std::log(e.circular) + 0.5 * n * (n - 1) * std::log(4.0 / (kPi * kPi)) - 0.5 * n2 * std::log(kappa) +
              std::log(b.i_lower);
  b.c_upper_source = (n2 + 0.25 * n) * std::log(kPi) + 0.5 * std::log(e.gaussian_symplectic) - std::log(e.circular);
  return b;
}

double source_bound_rhs(double abs_j, double beta, const GroupSpec& group) {
  const int n = group.rank();
  const EnsembleConstants e = ensemble_constants(group);
  const double c = (n * n + 0.25 * n) * std::log(kPi) + 0.5 * std::log(e.gaussian_symplectic) - std::log(e.circular);
  return std::exp(-0.5 * n * n * std::log(beta) + c + kPi * kPi * n * abs_j * abs_j / 8.0);
}

TrigInequalityReport trig_inequality_suite(std::size_t points) {
  TrigInequalityReport r;
  r.points = points;
  const double lo = -std::numeric_limits<double>::infinity();
  r.max_violation_sin = r.max_violation_upper = r.max_violation_lower = r.max_violation_sin_half = lo;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points > 1 ? static_cast<double>(i) / (points - 1) : 0.5;
    const double x = -kPi + 2.0 * kPi * t;
    const double omc = one_minus_cos(x);
    r.max_violation_sin = std::max(r.max_violation_sin, std::abs(std::sin(x)) - std::abs(x));
    r.max_violation_upper = std::max(r.max_violation_upper, 2.0 * x * x / (kPi * kPi) - omc);
    r.max_violation_lower = std::max(r.max_violation_lower, omc - 0.5 * x * x);
    const double h = 0.5 * x;
    const double s = std::sin(h);
    r.max_violation_sin_half = std::max(r.max_violation_sin_half, 4.0 * h * h / (kPi * kPi) - s * s);
  }
  constexpr double slack = 1e-15;
  r.all_hold = r.max_violation_sin <= slack && r.max_violation_upper <= slack && r.max_violation_lower <= slack &&
               r.max_violation_sin_half <= slack;
  return r;
}

}  // namespace ymlab
