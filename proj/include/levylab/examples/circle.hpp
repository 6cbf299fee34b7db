#pragma once

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "levylab/core.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/rng.hpp"

namespace levylab::examples {

/// The circle with metric d theta^2 / (4 pi^2 n^2) and the uniform probability measure.
struct CircleFamilyY {
  int n = 1;

  [[nodiscard]] double metric_scale() const { return 1.0 / (two_pi * n); }
  [[nodiscard]] double diameter() const { return 1.0 / (2.0 * n); }
};

inline double yn_diameter(int n) {
  if (n < 1) throw domain_violation("yn_diameter: n >= 1");
  return CircleFamilyY{n}.diameter();
}

/// Sufficient condition n > pi / eps for the eps-tube of any arc to be the whole circle.
inline bool yn_tube_is_whole_space(int n, double epsilon) {
  if (n < 1 || !(epsilon > 0.0)) throw domain_violation("yn_tube_is_whole_space: n >= 1, eps > 0");
  return n > pi / epsilon;
}

/// The unit-metric circle with probability density
/// (1 / 2 pi) 2^{2n-1} Gamma(n) n! / Gamma(2n) sin^{2n}(theta / 2).
struct CircleFamilyZ {
  int n = 1;

  [[nodiscard]] double log_norm_const() const {
    const auto nd = static_cast<double>(n);
    return -std::log(two_pi) + (2.0 * nd - 1.0) * std::log(2.0) + std::lgamma(nd) + std::lgamma(nd + 1.0) -
           std::lgamma(2.0 * nd);
  }

  [[nodiscard]] double norm_const() const { return std::exp(log_norm_const()); }

  [[nodiscard]] double density(double theta) const {
    const double s = std::abs(std::sin(0.5 * theta));
    if (s == 0.0) return 0.0;
    return std::exp(log_norm_const() + 2.0 * n * std::log(s));
  }

  /// Integral of the density over [0, 2 pi] by adaptive quadrature.
  [[nodiscard]] double total_mass() const {
    auto f = [this](double t) { return density(t); };
    return integrate(f, 0.0, pi, 1e-12) + integrate(f, pi, two_pi, 1e-12);
  }

  /// Inverse-CDF draw. theta = pi +- 2t where sin^2 t ~ Beta(1/2, n + 1/2).
  double sample(Rng& rng) const {
    const double w = boost::math::ibeta_inv(0.5, n + 0.5, rng.uniform());
    const double t = std::asin(std::sqrt(w));
    return rng.uniform() < 0.5 ? pi - 2.0 * t : pi + 2.0 * t;
  }
};

/// Mass of [0, pi - delta] u [pi + delta, 2 pi] under the Z_n measure, by quadrature (tol 1e-10).
inline double zn_mass_outside(int n, double delta) {
  if (n < 1) throw domain_violation("zn_mass_outside: n >= 1");
  if (!(delta > 0.0 && delta < pi)) throw domain_violation("zn_mass_outside: need 0 < delta < pi");
  const CircleFamilyZ z{n};
  auto f = [&z](double t) { return z.density(t); };
  return integrate(f, 0.0, pi - delta, 1e-10) + integrate(f, pi + delta, two_pi, 1e-10);
}

}  // namespace levylab::examples
