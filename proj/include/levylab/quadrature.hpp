#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "levylab/core.hpp"

namespace levylab {

/// Adaptive Gauss-Kronrod (15-point) integration of f over [a, b].
/// Throws when the error estimate misses `tolerance` relative to max(1, |I|).
template <class F>
double integrate(F&& f, double a, double b, double tolerance = 1e-12) {
  if (a == b) return 0.0;
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, tolerance, &err);
  if (!(err <= tolerance * std::max(1.0, std::abs(value)) * 10.0)) {
    throw resolution_error(fmt::format("quadrature on [{}, {}] did not converge (err {:.3g})", a, b, err));
  }
  return value;
}

}  // namespace levylab
