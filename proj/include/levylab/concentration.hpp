#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "levylab/core.hpp"
#include "levylab/parallel.hpp"
#include "levylab/rng.hpp"
#include "levylab/stats.hpp"

namespace levylab::concentration {

/// Normalised mass of { x in S^dim : geodesic distance to the equator >= eps }.
/// Equals int_eps^{pi/2} cos^{dim-1} / int_0^{pi/2} cos^{dim-1} = 1 - I_{sin^2 eps}(1/2, dim/2).
inline double sphere_band_mass(int dim, double epsilon) {
  if (dim < 1) throw domain_violation("sphere_band_mass: dim >= 1");
  if (!(epsilon >= 0.0 && epsilon <= pi / 2.0)) throw domain_violation("sphere_band_mass: eps in [0, pi/2]");
  if (epsilon == 0.0) return 1.0;
  if (epsilon == pi / 2.0) return 0.0;
  const double s = std::sin(epsilon);
  return boost::math::ibetac(0.5, 0.5 * dim, s * s);
}

/// Mass of { xi <= pi/2 - eps } on CP^n, i.e. cos^{2n}(eps).
inline double cpn_band_mass(int n, double epsilon) {
  if (n < 1) throw domain_violation("cpn_band_mass: n >= 1");
  if (!(epsilon >= 0.0 && epsilon <= pi / 2.0)) throw domain_violation("cpn_band_mass: eps in [0, pi/2]");
  if (epsilon == pi / 2.0) return 0.0;
  return std::exp(2.0 * n * std::log(std::cos(epsilon)));
}

struct ConcentrationEntry {
  int n = 0;
  double epsilon = 0.0;
  std::optional<double> exact_mass;
  double mc_mass = 0.0;
  double mc_halfwidth = 0.0;  // 99% Clopper-Pearson
  std::int64_t trials = 0;
};

struct ConcentrationReport {
  std::string family_label;
  std::uint64_t seed = 0;
  bool degenerate = false;  // some observable had zero empirical variance
  std::vector<ConcentrationEntry> entries;
};

/// A scalar observable on one member of a family.
/// Deviations are measured from `locus` when set, otherwise from the empirical median.
struct ObservableFamily {
  std::string label;
  int n = 0;
  std::function<double(Rng&)> draw;
  std::optional<double> locus;
  std::function<std::optional<double>(double)> exact_mass;
};

inline constexpr double report_confidence = 0.99;
inline constexpr std::int64_t min_trials = 1000;

/// Monte Carlo mass of { |X - centre| > eps } for each eps, with exact masses where known.
inline ConcentrationReport estimate_concentration(const ObservableFamily& family, std::span<const double> epsilon_grid,
                                                  std::int64_t trials, const RandomStream& stream) {
  if (trials < min_trials) throw domain_violation(fmt::format("estimate_concentration: trials >= {}", min_trials));
  if (!family.draw) throw domain_violation("estimate_concentration: family has no sampler");

  const std::vector<double> xs = draw_many(trials, stream, [&](Rng& rng) { return family.draw(rng); });
  const double centre = family.locus ? *family.locus : stats::median(xs);
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());

  ConcentrationReport report;
  report.family_label = family.label;
  report.seed = stream.seed;
  report.degenerate = *lo == *hi;
  for (double eps : epsilon_grid) {
    std::int64_t k = 0;
    for (double x : xs) k += std::abs(x - centre) > eps ? 1 : 0;
    ConcentrationEntry e;
    e.n = family.n;
    e.epsilon = eps;
    e.trials = trials;
    e.mc_mass = static_cast<double>(k) / static_cast<double>(trials);
    e.mc_halfwidth = stats::binomial_halfwidth(k, trials, report_confidence);
    if (family.exact_mass) e.exact_mass = family.exact_mass(eps);
    report.entries.push_back(e);
  }
  return report;
}

/// Concatenates reports of the same family (different n) in argument order.
inline ConcentrationReport merge_reports(std::span<const ConcentrationReport> parts) {
  if (parts.empty()) return {};
  ConcentrationReport out;
  out.family_label = parts.front().family_label;
  out.seed = parts.front().seed;
  for (const auto& p : parts) {
    out.degenerate = out.degenerate || p.degenerate;
    out.entries.insert(out.entries.end(), p.entries.begin(), p.entries.end());
  }
  return out;
}

struct TrendVerdict {
  double epsilon = 0.0;
  std::vector<int> ns;
  bool pass = false;
};

/// Per eps: pass when the mass is non-increasing in n and the largest n lies
/// below the smallest n with non-overlapping confidence intervals.
/// A diagnostic consistent with the Levy property, not a proof of it.
inline std::vector<TrendVerdict> levy_trend(const ConcentrationReport& report) {
  std::map<double, std::vector<const ConcentrationEntry*>> by_eps;
  for (const auto& e : report.entries) by_eps[e.epsilon].push_back(&e);

  std::vector<TrendVerdict> verdicts;
  for (auto& [eps, list] : by_eps) {
    std::sort(list.begin(), list.end(), [](auto* a, auto* b) { return a->n < b->n; });
    list.erase(std::unique(list.begin(), list.end(), [](auto* a, auto* b) { return a->n == b->n; }), list.end());
    if (list.size() < 3) {
      throw insufficient_data_error(fmt::format("levy_trend: eps = {} has {} distinct n (need 3)", eps, list.size()));
    }
    TrendVerdict v;
    v.epsilon = eps;
    bool monotone = true;
    for (std::size_t i = 0; i < list.size(); ++i) {
      v.ns.push_back(list[i]->n);
      if (i > 0 && list[i]->mc_mass > list[i - 1]->mc_mass) monotone = false;
    }
    const auto* first = list.front();
    const auto* last = list.back();
    v.pass = monotone && last->mc_mass + last->mc_halfwidth < first->mc_mass - first->mc_halfwidth;
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

/// Metric rescaling g_i -> g_i / c_i of a family, with c_i > 0 nondecreasing.
struct ScaledFamily {
  std::string base_family;
  std::string growth;  // "linear", "quadratic" or "custom"
  std::vector<double> scale_constants;

  static ScaledFamily linear(std::string base, int first_index, int count) {
    ScaledFamily f{std::move(base), "linear", {}};
    for (int i = 0; i < count; ++i) f.scale_constants.push_back(first_index + i);
    f.validate();
    return f;
  }

  static ScaledFamily quadratic(std::string base, int first_index, int count) {
    ScaledFamily f{std::move(base), "quadratic", {}};
    for (int i = 0; i < count; ++i) f.scale_constants.push_back(std::pow(first_index + i, 2.0));
    f.validate();
    return f;
  }

  static ScaledFamily custom(std::string base, std::vector<double> constants) {
    ScaledFamily f{std::move(base), "custom", std::move(constants)};
    f.validate();
    return f;
  }

  void validate() const {
    for (std::size_t i = 0; i < scale_constants.size(); ++i) {
      if (!(scale_constants[i] > 0.0)) throw domain_violation("ScaledFamily: scale constants must be positive");
      if (i > 0 && scale_constants[i] < scale_constants[i - 1]) {
        throw domain_violation("ScaledFamily: scale constants must be nondecreasing");
      }
    }
  }
};

/// Ricci lower bounds of the rescaled family: c_i R_i.
inline std::vector<double> apply_rescaling(const ScaledFamily& family, std::span<const double> base_ricci) {
  family.validate();
  if (family.scale_constants.size() != base_ricci.size()) {
    throw domain_violation("apply_rescaling: one scale constant per family member");
  }
  std::vector<double> out;
  out.reserve(base_ricci.size());
  for (std::size_t i = 0; i < base_ricci.size(); ++i) {
    if (!(base_ricci[i] > 0.0)) {
      throw criterion_inapplicable_error(
          fmt::format("apply_rescaling: base Ricci bound R_{} = {} is not positive", i, base_ricci[i]));
    }
    out.push_back(family.scale_constants[i] * base_ricci[i]);
  }
  return out;
}

}  // namespace levylab::concentration
