#pragma once

#include <cmath>

#include "levylab/core.hpp"

namespace levylab::examples {

struct SobolevNorms {
  double w12_norm = 0.0;
  double l2_norm = 0.0;
};

/// u_n(x) = sin(n x) / sqrt(pi (n^2 + 1)) on [0, 2 pi], an orthonormal system of H^1_0.
inline double sobolev_mode(int n, double x) {
  return std::sin(n * x) / std::sqrt(pi * (n * static_cast<double>(n) + 1.0));
}

inline double sobolev_mode_derivative(int n, double x) {
  return n * std::cos(n * x) / std::sqrt(pi * (n * static_cast<double>(n) + 1.0));
}

/// W^{1,2} and L^2 norms of u_n by the periodic trapezoidal rule with `points` nodes.
/// Exact targets are 1 and 1 / sqrt(n^2 + 1).
inline SobolevNorms sobolev_norms(int n, int points) {
  if (n < 1) throw domain_violation("sobolev_norms: n >= 1");
  if (points < 20 * n) {
    throw resolution_error(fmt::format("sobolev_norms: {} points cannot resolve u_{} (need >= {})", points, n, 20 * n));
  }
  const double h = two_pi / points;
  double u2 = 0.0;
  double du2 = 0.0;
  for (int k = 0; k < points; ++k) {
    const double x = k * h;
    const double u = sobolev_mode(n, x);
    const double du = sobolev_mode_derivative(n, x);
    u2 += u * u;
    du2 += du * du;
  }
  u2 *= h;
  du2 *= h;
  return {std::sqrt(u2 + du2), std::sqrt(u2)};
}

}  // namespace levylab::examples
