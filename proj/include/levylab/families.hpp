#pragma once

#include <cmath>
#include <string>

#include "levylab/concentration.hpp"
#include "levylab/examples/circle.hpp"
#include "levylab/sampling.hpp"

namespace levylab::concentration {

/// CP^n, observable pi/2 - xi (distance to the hyperplane at infinity in the xi coordinate).
/// Exact mass of { pi/2 - xi > eps } is cos^{2n}(eps).
inline ObservableFamily cpn_family(int n, sampling::HaarRoute route) {
  ObservableFamily f;
  f.label = "cpn";
  f.n = n;
  f.locus = 0.0;
  f.exact_mass = [n](double eps) -> std::optional<double> { return cpn_band_mass(n, eps); };
  f.draw = [n, route](Rng& rng) {
    const double c2 = sampling::cpn_point_from_haar(n, rng, route);
    return sampling::half_pi - std::acos(std::sqrt(std::clamp(c2, 0.0, 1.0)));
  };
  return f;
}

/// Same family through the inverse-CDF angular sampler.
inline ObservableFamily cpn_family(int n) {
  ObservableFamily f = cpn_family(n, sampling::HaarRoute::column);
  f.draw = [n](Rng& rng) { return sampling::half_pi - sampling::sample_cpn_angles(n, rng).xi; };
  return f;
}

/// First coordinate of a uniform point on S^dim; |x_1| > eps is the band at
/// distance arcsin(eps) from the equator x_1 = 0.
inline ObservableFamily sphere_coordinate_family(int dim) {
  ObservableFamily f;
  f.label = "sphere-coordinate";
  f.n = dim;
  f.locus = 0.0;
  f.exact_mass = [dim](double eps) -> std::optional<double> {
    if (eps >= 1.0) return 0.0;
    return sphere_band_mass(dim, std::asin(eps));
  };
  f.draw = [dim](Rng& rng) { return sampling::uniform_on_sphere(dim + 1, rng)(0); };
  return f;
}

/// Z_n circle, observable theta, locus pi.
inline ObservableFamily circle_z_family(int n) {
  ObservableFamily f;
  f.label = "circle-z";
  f.n = n;
  f.locus = pi;
  f.exact_mass = [n](double delta) -> std::optional<double> {
    if (delta >= pi) return 0.0;
    return examples::zn_mass_outside(n, delta);
  };
  f.draw = [z = examples::CircleFamilyZ{n}](Rng& rng) { return z.sample(rng); };
  return f;
}

/// Degenerate observable; every mass is zero.
inline ObservableFamily constant_family(double value, int n) {
  ObservableFamily f;
  f.label = "constant";
  f.n = n;
  f.draw = [value](Rng&) { return value; };
  return f;
}

}  // namespace levylab::concentration
