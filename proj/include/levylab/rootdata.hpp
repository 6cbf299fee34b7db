#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "levylab/core.hpp"

namespace levylab {

/// Classical series: A = SU(n), B = Spin(2n+1), C = USp(2n), D = Spin(2n).
enum class Series { A, B, C, D };

inline char series_letter(Series s) { return "ABCD"[static_cast<int>(s)]; }

inline Series parse_series(std::string_view text) {
  if (text == "A" || text == "a") return Series::A;
  if (text == "B" || text == "b") return Series::B;
  if (text == "C" || text == "c") return Series::C;
  if (text == "D" || text == "d") return Series::D;
  throw invalid_spec_error(fmt::format("unknown series '{}'", text));
}

/// Smallest series parameter with a simple algebra of that type.
inline int min_series_parameter(Series s) { return s == Series::D ? 4 : 2; }

/// Order of the centre of the simply connected form.
inline int simply_connected_center_order(Series s, int n) {
  switch (s) {
    case Series::A: return n;
    case Series::B:
    case Series::C: return 2;
    case Series::D: return 4;
  }
  return 1;
}

inline int group_rank(Series s, int n) { return s == Series::A ? n - 1 : n; }

// USp(2n) is n(2n+1)-dimensional; see the README note on the symplectic dimension.
inline int group_dimension(Series s, int n) {
  switch (s) {
    case Series::A: return n * n - 1;
    case Series::B:
    case Series::C: return n * (2 * n + 1);
    case Series::D: return n * (2 * n - 1);
  }
  return 0;
}

/// A concrete compact group: the simply connected form of (series, n)
/// divided by a central subgroup of order center_order.
struct GroupSpec {
  Series series = Series::A;
  int n = 2;
  int center_order = 1;

  [[nodiscard]] int rank() const { return group_rank(series, n); }
  [[nodiscard]] int dimension() const { return group_dimension(series, n); }

  [[nodiscard]] std::string name() const {
    std::string base;
    switch (series) {
      case Series::A: base = fmt::format("SU({})", n); break;
      case Series::B: base = fmt::format("Spin({})", 2 * n + 1); break;
      case Series::C: base = fmt::format("USp({})", 2 * n); break;
      case Series::D: base = fmt::format("Spin({})", 2 * n); break;
    }
    return center_order == 1 ? base : fmt::format("{}/Z{}", base, center_order);
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

inline void validate(const GroupSpec& g) {
  if (g.n < min_series_parameter(g.series)) {
    throw invalid_spec_error(fmt::format("series {} needs n >= {}, got {}", series_letter(g.series),
                                         min_series_parameter(g.series), g.n));
  }
  const int z = simply_connected_center_order(g.series, g.n);
  if (g.center_order < 1 || z % g.center_order != 0) {
    throw invalid_spec_error(
        fmt::format("center order {} does not divide |Z| = {} for {}", g.center_order, z, g.name()));
  }
}

}  // namespace levylab

namespace levylab::rootdata {

using Vector = Eigen::VectorXd;

struct RootSystem {
  Series series = Series::A;
  int n = 0;
  int rank = 0;
  int ambient_dim = 0;
  std::vector<Vector> simple_roots;
  std::vector<Vector> simple_coroots;
  std::vector<Vector> positive_roots;
  std::vector<Vector> positive_coroots;
  std::vector<int> invariant_degrees;
  double torus_volume = 1.0;
};

struct LogVolume {
  double log_value = 0.0;
  [[nodiscard]] double value() const { return std::exp(log_value); }
};

/// Coroot 2 alpha / (alpha | alpha).
inline Vector coroot(const Vector& alpha) { return 2.0 * alpha / alpha.squaredNorm(); }

/// |v_1 ^ ... ^ v_r| as sqrt(det Gram); 1 for an empty list.
inline double wedge_norm(const std::vector<Vector>& vs) {
  if (vs.empty()) return 1.0;
  const auto r = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd gram(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) gram(i, j) = vs[i].dot(vs[j]);
  return std::sqrt(std::abs(gram.determinant()));
}

namespace detail {

inline Vector unit(int dim, int i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

}  // namespace detail

inline RootSystem build_root_system(Series series, int n) {
  validate(GroupSpec{series, n, 1});
  using detail::unit;

  RootSystem rs;
  rs.series = series;
  rs.n = n;
  rs.rank = group_rank(series, n);
  rs.ambient_dim = n;

  // simple roots e_i - e_{i+1}, plus the series-specific last root
  for (int i = 0; i + 1 < n; ++i) rs.simple_roots.push_back(unit(n, i) - unit(n, i + 1));
  switch (series) {
    case Series::A: break;
    case Series::B: rs.simple_roots.push_back(unit(n, n - 1)); break;
    case Series::C: rs.simple_roots.push_back(2.0 * unit(n, n - 1)); break;
    case Series::D: rs.simple_roots.push_back(unit(n, n - 2) + unit(n, n - 1)); break;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      rs.positive_roots.push_back(unit(n, i) - unit(n, j));
      if (series != Series::A) rs.positive_roots.push_back(unit(n, i) + unit(n, j));
    }
    if (series == Series::B) rs.positive_roots.push_back(unit(n, i));
    if (series == Series::C) rs.positive_roots.push_back(2.0 * unit(n, i));
  }

  for (const auto& a : rs.simple_roots) rs.simple_coroots.push_back(coroot(a));
  for (const auto& a : rs.positive_roots) rs.positive_coroots.push_back(coroot(a));

  switch (series) {
    case Series::A:
      for (int i = 1; i <= n - 1; ++i) rs.invariant_degrees.push_back(i + 1);
      break;
    case Series::B:
    case Series::C:
      for (int i = 1; i <= n; ++i) rs.invariant_degrees.push_back(2 * i);
      break;
    case Series::D:
      for (int i = 1; i <= n - 1; ++i) rs.invariant_degrees.push_back(2 * i);
      rs.invariant_degrees.push_back(n);
      break;
  }

  rs.torus_volume = wedge_norm(rs.simple_coroots);
  return rs;
}

/// log V(S^{2d-1}) = log(2 pi^d / (d-1)!).
inline double log_odd_sphere_volume(int d) {
  return std::log(2.0) + d * std::log(pi) - std::lgamma(static_cast<double>(d));
}

/// Macdonald's volume formula evaluated from the root data:
/// V = |Gamma|^{-1} V(T) prod_i V(S^{2 d_i - 1}) prod_{positive coroots} (c|c).
inline LogVolume macdonald_log_volume(const RootSystem& rs, int center_order) {
  if (center_order < 1) throw invalid_spec_error("center_order must be >= 1");
  double lv = -std::log(static_cast<double>(center_order)) + std::log(rs.torus_volume);
  for (int d : rs.invariant_degrees) lv += log_odd_sphere_volume(d);
  for (const auto& c : rs.positive_coroots) lv += std::log(c.squaredNorm());
  return {lv};
}

namespace detail {

inline double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Closed forms for the simply connected groups; valid as formulas for any n >= 1.
inline double closed_form_raw(Series s, int n) {
  const double ln2 = std::log(2.0);
  const double lnpi = std::log(pi);
  const auto nd = static_cast<double>(n);
  double odd_factorials = 0.0;  // sum_{i=1}^{n} log (2i-1)!
  switch (s) {
    case Series::A: {
      double f = 0.0;
      for (int i = 1; i <= n - 1; ++i) f += log_factorial(i);
      return 0.5 * std::log(nd) + (nd * (nd + 1.0) / 2.0 - 1.0) * std::log(two_pi) - f;
    }
    case Series::B:
      for (int i = 1; i <= n; ++i) odd_factorials += log_factorial(2 * i - 1);
      return (nd * (nd + 2.0) + 1.0) * ln2 + nd * (nd + 1.0) * lnpi - odd_factorials;
    case Series::C:
      for (int i = 1; i <= n; ++i) odd_factorials += log_factorial(2 * i - 1);
      return nd * nd * ln2 + nd * (nd + 1.0) * lnpi - odd_factorials;
    case Series::D:
      for (int i = 1; i <= n - 1; ++i) odd_factorials += log_factorial(2 * i - 1);
      return (nd * nd + 1.0) * ln2 + nd * nd * lnpi - log_factorial(n - 1) - odd_factorials;
  }
  return 0.0;
}

}  // namespace detail

/// Closed-form group volume per series; quotients subtract log |Gamma|.
inline LogVolume closed_form_log_volume(const GroupSpec& g) {
  validate(g);
  return {detail::closed_form_raw(g.series, g.n) - std::log(static_cast<double>(g.center_order))};
}

struct VolumeRatio {
  Series series = Series::A;
  int n = 0;
  double log_ratio = 0.0;   // log of V(larger) / V(smaller)
  int dimension_gap = 0;
  double normalized = 0.0;  // ratio^(1 / dimension_gap)
  double asymptote = 0.0;   // large-n equivalent of `normalized`
};

/// Smallest n for which both groups entering the ratio are valid.
inline int min_ratio_parameter(Series s) {
  return s == Series::A ? min_series_parameter(s) : min_series_parameter(s) + 1;
}

/// A: SU(n+1) over SU(n). B, C, D: the rank-n group over the rank-(n-1) group.
inline VolumeRatio volume_ratio(Series s, int n) {
  if (n < min_ratio_parameter(s)) {
    throw invalid_spec_error(
        fmt::format("volume ratio for series {} needs n >= {}", series_letter(s), min_ratio_parameter(s)));
  }
  const int big = s == Series::A ? n + 1 : n;
  const int small = big - 1;
  VolumeRatio r;
  r.series = s;
  r.n = n;
  r.log_ratio = closed_form_log_volume({s, big, 1}).log_value - closed_form_log_volume({s, small, 1}).log_value;
  r.dimension_gap = group_dimension(s, big) - group_dimension(s, small);
  r.normalized = std::exp(r.log_ratio / r.dimension_gap);
  const double scale = s == Series::A ? n : 2.0 * n;
  r.asymptote = std::sqrt(two_pi * e_const / scale);
  return r;
}

inline double normalized_volume_ratio(Series s, int n) { return volume_ratio(s, n).normalized; }

/// One CSV row of the volume table: series,n,log_volume,ratio,normalized_ratio,asymptote.
struct VolumeRow {
  Series series = Series::A;
  int n = 0;
  double log_volume = 0.0;
  std::optional<VolumeRatio> ratio;
};

inline VolumeRow volume_row(Series s, int n) {
  VolumeRow row{s, n, closed_form_log_volume({s, n, 1}).log_value, std::nullopt};
  if (n >= min_ratio_parameter(s)) row.ratio = volume_ratio(s, n);
  return row;
}

}  // namespace levylab::rootdata
