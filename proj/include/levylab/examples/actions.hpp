#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "levylab/core.hpp"
#include "levylab/parallel.hpp"
#include "levylab/sampling.hpp"
#include "levylab/stats.hpp"

namespace levylab::examples {

enum class ActionKind {
  trivial,             // every group element fixes every point
  fundamental,         // SO(N) on S^{N-1} by matrix multiplication
  axis_rotation,       // SO(2) rotating S^2 about a fixed axis
  u1_weights,          // U(1) on S^{2m-1} by diag(R_{m_1 theta}, ..., R_{m_k theta})
  hilbert_truncation,  // SO(N) on the first N coordinates of a truncated Hilbert ball
};

/// Declarative description of a group action on a compact set.
struct ActionSpec {
  ActionKind kind = ActionKind::trivial;
  int group_n = 1;    // N of SO(N); the group of a trivial action only labels the record
  int space_dim = 2;  // ambient R^d containing the compact set
  std::vector<int> weights;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();

  static ActionSpec trivial(int group_n, int sphere_dim) {
    return {ActionKind::trivial, group_n, sphere_dim + 1, {}, Eigen::Vector3d::UnitZ()};
  }
  static ActionSpec fundamental(int n) { return {ActionKind::fundamental, n, n, {}, Eigen::Vector3d::UnitZ()}; }
  static ActionSpec axis_rotation(const Eigen::Vector3d& axis) {
    return {ActionKind::axis_rotation, 2, 3, {}, axis.normalized()};
  }
  static ActionSpec u1(std::vector<int> weights) {
    const int d = 2 * static_cast<int>(weights.size());
    return {ActionKind::u1_weights, 1, d, std::move(weights), Eigen::Vector3d::UnitZ()};
  }
  static ActionSpec hilbert(int n, int truncation_dim) {
    return {ActionKind::hilbert_truncation, n, truncation_dim, {}, Eigen::Vector3d::UnitZ()};
  }

  [[nodiscard]] std::string describe() const {
    switch (kind) {
      case ActionKind::trivial: return fmt::format("SO({}) trivial on S^{}", group_n, space_dim - 1);
      case ActionKind::fundamental: return fmt::format("SO({}) on S^{}", group_n, space_dim - 1);
      case ActionKind::axis_rotation: return "SO(2) axis rotation on S^2";
      case ActionKind::u1_weights: return fmt::format("U(1) weights on S^{}", space_dim - 1);
      case ActionKind::hilbert_truncation: return fmt::format("SO({}) on Hilbert ball (truncated to {})", group_n, space_dim);
    }
    return {};
  }
};

// ---------------------------------------------------------------------------
// Target sets. Vectors shorter than the point are padded with zeros, so a
// cylinder set only constrains finitely many coordinates.

/// { y : <v, y> > c }
struct HalfSpace {
  Eigen::VectorXd v;
  double c = 0.0;
};

/// { y : |<v, y - centre>| < eps } (or > eps when `complement`)
struct WeakCylinder {
  Eigen::VectorXd v;
  Eigen::VectorXd centre;
  double eps = 0.0;
  bool complement = false;
};

/// Arc of S^1 = { (cos t, sin t) : t in [start, start + length) mod 2 pi }.
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

/// { y : |y - centre| < radius }
struct Ball {
  Eigen::VectorXd centre;
  double radius = 0.0;
};

using TargetSet = std::variant<HalfSpace, WeakCylinder, Arc, Ball>;

namespace detail {

inline double padded_dot(const Eigen::VectorXd& v, const Eigen::VectorXd& y) {
  const Eigen::Index k = std::min(v.size(), y.size());
  return v.head(k).dot(y.head(k));
}

inline double padded_distance(const Eigen::VectorXd& c, const Eigen::VectorXd& y) {
  const Eigen::Index k = std::max(c.size(), y.size());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  a.head(c.size()) = c;
  b.head(y.size()) = y;
  return (a - b).norm();
}

inline double wrap_angle(double t) {
  t = std::fmod(t, two_pi);
  return t < 0.0 ? t + two_pi : t;
}

}  // namespace detail

inline bool contains(const TargetSet& set, const Eigen::VectorXd& y) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return detail::padded_dot(s.v, y) > s.c;
        } else if constexpr (std::is_same_v<T, WeakCylinder>) {
          const double d = std::abs(detail::padded_dot(s.v, y) - detail::padded_dot(s.v, s.centre));
          return s.complement ? d > s.eps : d < s.eps;
        } else if constexpr (std::is_same_v<T, Arc>) {
          if (y.size() != 2) throw domain_violation("Arc target needs points of S^1");
          if (s.length >= two_pi) return true;
          const double t = detail::wrap_angle(std::atan2(y(1), y(0)) - s.start);
          return t < s.length;
        } else {
          return detail::padded_distance(s.centre, y) < s.radius;
        }
      },
      set);
}

inline std::string describe(const TargetSet& set) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HalfSpace>) return fmt::format("half-space <v,y> > {}", s.c);
        else if constexpr (std::is_same_v<T, WeakCylinder>)
          return fmt::format("weak cylinder |<v,y-x0>| {} {}", s.complement ? ">" : "<", s.eps);
        else if constexpr (std::is_same_v<T, Arc>) return fmt::format("arc [{}, {})", s.start, s.start + s.length);
        else return fmt::format("ball radius {}", s.radius);
      },
      set);
}

// ---------------------------------------------------------------------------

/// diag(R_{m_1 theta}, ..., R_{m_k theta}) x with R_a = [[cos a, sin a], [-sin a, cos a]].
inline Eigen::VectorXd u1_block_action(std::span<const int> weights, double theta, const Eigen::VectorXd& x) {
  if (x.size() != 2 * static_cast<Eigen::Index>(weights.size())) {
    throw domain_violation("u1_block_action: x must have two coordinates per weight");
  }
  Eigen::VectorXd y(x.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0) throw invalid_spec_error("u1_block_action: zero weight leaves a fixed plane");
    const double a = weights[j] * theta;
    const double c = std::cos(a);
    const double s = std::sin(a);
    const auto i = static_cast<Eigen::Index>(2 * j);
    y(i) = c * x(i) + s * x(i + 1);
    y(i + 1) = -s * x(i) + c * x(i + 1);
  }
  return y;
}

namespace detail {

inline Eigen::Matrix3d axis_rotation_matrix(const Eigen::Vector3d& axis, double theta) {
  return Eigen::AngleAxisd(theta, axis).toRotationMatrix();
}

inline void check_domain(const ActionSpec& a, const Eigen::VectorXd& x) {
  if (a.kind == ActionKind::u1_weights) {
    if (a.weights.empty()) throw invalid_spec_error("U(1) action needs at least one weight");
    for (int w : a.weights)
      if (w == 0) throw invalid_spec_error("U(1) action: zero weight leaves a fixed plane");
  }
  if (a.kind == ActionKind::fundamental && a.group_n < 1) throw invalid_spec_error("SO(N) needs N >= 1");
  if (x.size() != a.space_dim) {
    throw domain_violation(fmt::format("point has dimension {}, action lives in R^{}", x.size(), a.space_dim));
  }
  if (a.kind == ActionKind::hilbert_truncation) {
    if (a.group_n < 1 || a.group_n > a.space_dim) throw invalid_spec_error("Hilbert truncation needs 1 <= N <= dim");
    if (x.norm() > 1.0 + 1e-12) throw domain_violation("point lies outside the unit ball");
  } else if (std::abs(x.norm() - 1.0) > 1e-10) {
    throw domain_violation("point is not on the unit sphere");
  }
}

}  // namespace detail

/// rho(g, x) for one Haar-distributed group element g.
/// The Hilbert truncation draws g.x directly as |x_{1..N}| times a uniform point of S^{N-1},
/// which has the law of g.x for Haar g in SO(N).
inline Eigen::VectorXd act_with_haar(const ActionSpec& a, const Eigen::VectorXd& x, Rng& rng) {
  switch (a.kind) {
    case ActionKind::trivial: return x;
    case ActionKind::fundamental: return sampling::haar_special_orthogonal(a.group_n, rng) * x;
    case ActionKind::axis_rotation: return detail::axis_rotation_matrix(a.axis, two_pi * rng.uniform()) * x;
    case ActionKind::u1_weights: return u1_block_action(a.weights, two_pi * rng.uniform(), x);
    case ActionKind::hilbert_truncation: {
      Eigen::VectorXd y = x;
      const double r = x.head(a.group_n).norm();
      y.head(a.group_n) = r * sampling::uniform_on_sphere(a.group_n, rng);
      return y;
    }
  }
  return x;
}

struct PushforwardEstimate {
  ActionSpec action;
  Eigen::VectorXd base_point;
  std::string target;
  double probability = 0.0;
  double halfwidth = 0.0;  // 99% Clopper-Pearson
  std::int64_t trials = 0;
};

/// Monte Carlo estimate of mu^x(A) = Haar{ g : rho(g, x) in A }.
inline PushforwardEstimate induced_measure(const ActionSpec& action, const Eigen::VectorXd& x, const TargetSet& target,
                                           std::int64_t trials, const RandomStream& stream) {
  detail::check_domain(action, x);
  if (trials < 1) throw domain_violation("induced_measure: trials >= 1");
  const std::vector<double> hits = draw_many(
      trials, stream, [&](Rng& rng) { return contains(target, act_with_haar(action, x, rng)) ? 1.0 : 0.0; });
  std::int64_t k = 0;
  for (double h : hits) k += h > 0.5 ? 1 : 0;
  PushforwardEstimate est{action, x, describe(target), static_cast<double>(k) / static_cast<double>(trials),
                          stats::binomial_halfwidth(k, trials), trials};
  return est;
}

struct HilbertMoment {
  int N = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double exact = 0.0;
  std::int64_t trials = 0;
  std::vector<double> projections;  // <v, X_N> per trial
};

/// E[<v, X_N>^2] for X_N uniform on the unit sphere of span(e_1..e_N); exact value sum_{j<=N} v_j^2 / N.
inline HilbertMoment hilbert_coordinate_moment(int N, const Eigen::VectorXd& v, std::int64_t trials,
                                               const RandomStream& stream) {
  if (N < 1) throw domain_violation("hilbert_coordinate_moment: N >= 1");
  if (trials < 2) throw domain_violation("hilbert_coordinate_moment: trials >= 2");
  const Eigen::Index k = std::min<Eigen::Index>(N, v.size());
  HilbertMoment m;
  m.N = N;
  m.trials = trials;
  m.exact = v.head(k).squaredNorm() / N;
  m.projections = draw_many(trials, stream, [&](Rng& rng) {
    const Eigen::VectorXd x = sampling::uniform_on_sphere(N, rng);
    return v.head(k).dot(x.head(k));
  });
  std::vector<double> squares(m.projections.size());
  std::transform(m.projections.begin(), m.projections.end(), squares.begin(), [](double p) { return p * p; });
  const auto ms = stats::mean_and_stderr(squares);
  m.estimate = ms.mean;
  m.std_error = ms.std_error;
  return m;
}

inline std::vector<double> uniform_theta_grid(int count) {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) g.push_back(two_pi * k / count);
  return g;
}

/// min over sampled unit x of max over the grid of |R(theta) x - x|.
/// A positive value certifies that no sampled point is (nearly) fixed.
inline double u1_min_displacement(std::span<const int> weights, std::span<const double> theta_grid,
                                  std::int64_t sphere_samples, const RandomStream& stream) {
  if (weights.empty()) throw invalid_spec_error("u1_min_displacement: no weights");
  for (int w : weights)
    if (w == 0) throw invalid_spec_error("u1_min_displacement: zero weight leaves a fixed plane");
  if (theta_grid.empty() || sphere_samples < 1) throw domain_violation("u1_min_displacement: empty grid or sample");
  const int dim = 2 * static_cast<int>(weights.size());
  const std::vector<double> best = draw_many(sphere_samples, stream, [&](Rng& rng) {
    const Eigen::VectorXd x = sampling::uniform_on_sphere(dim, rng);
    double m = 0.0;
    for (double t : theta_grid) m = std::max(m, (u1_block_action(weights, t, x) - x).norm());
    return m;
  });
  return *std::min_element(best.begin(), best.end());
}

/// J(X) = diag(X, det(X)^{-1}), embedding U(n) into SU(n+1).
inline Eigen::MatrixXcd embedding_J(const Eigen::MatrixXcd& X) {
  if (X.rows() != X.cols() || X.rows() < 1) throw domain_violation("embedding_J: square input required");
  if (sampling::unitarity_residual(X) > 1e-8) throw domain_violation("embedding_J: input is not unitary");
  const Eigen::Index n = X.rows();
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  J.topLeftCorner(n, n) = X;
  J(n, n) = 1.0 / X.determinant();
  return J;
}

}  // namespace levylab::examples
