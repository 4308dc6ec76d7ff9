#pragma once

namespace ymlab {

// A numerical value with an absolute error estimate. For deterministic
// quadrature the error is the two-resolution difference; for Monte Carlo it
// is a standard error.
template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

}  // namespace ymlab
