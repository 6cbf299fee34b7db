#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "levylab/concentration.hpp"
#include "levylab/examples/actions.hpp"
#include "levylab/examples/circle.hpp"
#include "levylab/examples/sobolev.hpp"
#include "levylab/liealg.hpp"
#include "levylab/record.hpp"
#include "levylab/rootdata.hpp"
#include "levylab/sampling.hpp"
#include "levylab/stats.hpp"

// Acceptance checks shared by `levylab suite` and the acceptance test binary.
// Each check is deterministic given the seed; runtime is measured but never
// written into records.

namespace levylab::suite {

using record::Json;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::vector<Json> records;
  double runtime_ms = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Json item(int id, std::uint64_t seed) { return record::make(fmt::format("criterion-{}", id), seed); }

inline std::vector<liealg::AlgebraSpec> chi_algebras() {
  std::vector<liealg::AlgebraSpec> out;
  for (int n = 2; n <= 8; ++n) out.push_back(liealg::su(n));
  for (int n = 3; n <= 12; ++n) out.push_back(liealg::so(n));
  for (int n = 2; n <= 5; ++n) out.push_back(liealg::usp(n));
  return out;
}

inline double killing_spread(const liealg::StructureConstants& sc, double chi) {
  const Eigen::MatrixXd K = liealg::killing_matrix(sc);
  return (K + 2.0 * chi * Eigen::MatrixXd::Identity(sc.dim(), sc.dim())).cwiseAbs().maxCoeff();
}

}  // namespace detail

inline constexpr double chi_tolerance = 1e-9;

/// chi from brute-force structure constants against n+2, n-2, 2n+2.
inline CriterionResult chi_brute_force(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{1, "chi brute force", true, {}, {}, 0.0};
  std::vector<std::string> bad;
  for (const auto& a : detail::chi_algebras()) {
    const auto sc = liealg::structure_constants(liealg::build_basis(a));
    const double chi = liealg::chi_from_generator(sc, 0);
    const double spread = detail::killing_spread(sc, chi);
    const bool ok = std::abs(chi - a.chi_closed_form()) <= chi_tolerance && spread <= liealg::killing_tolerance;
    if (!ok) bad.push_back(fmt::format("{} (chi {:.12g}, expected {})", a.name(), chi, a.chi_closed_form()));
    Json j = detail::item(1, seed);
    j["algebra"] = a.name();
    j["dim"] = a.dimension();
    j["chi"] = chi;
    j["closed_form"] = a.chi_closed_form();
    j["spread"] = spread;
    j["pass"] = ok;
    r.records.push_back(std::move(j));
  }
  r.runtime_ms = sw.ms();
  const bool fast = r.runtime_ms < 30'000.0;
  r.pass = bad.empty() && fast;
  r.detail = bad.empty() ? fmt::format("{} algebras match", r.records.size())
                         : fmt::format("{} of {} mismatch: {}", bad.size(), r.records.size(), fmt::join(bad, ", "));
  if (!fast) r.detail += fmt::format("; runtime {:.0f} ms exceeds 30 s", r.runtime_ms);
  return r;
}

/// Macdonald formula vs closed forms, n <= 30, plus V(SU(2)) = 2 pi^2 (sqrt 2)^3.
inline CriterionResult volume_agreement(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{2, "volume two-path agreement", true, {}, {}, 0.0};
  double worst = 0.0;
  for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
    double series_worst = 0.0;
    for (int n = min_series_parameter(s); n <= 30; ++n) {
      const GroupSpec g{s, n, 1};
      const double a = rootdata::macdonald_log_volume(rootdata::build_root_system(s, n), g.center_order).log_value;
      const double b = rootdata::closed_form_log_volume(g).log_value;
      // relative agreement of the volumes themselves: |V_a / V_b - 1|
      series_worst = std::max(series_worst, std::abs(std::expm1(a - b)));
    }
    worst = std::max(worst, series_worst);
    Json j = detail::item(2, seed);
    j["series"] = std::string(1, series_letter(s));
    j["n_max"] = 30;
    j["max_relative_difference"] = series_worst;
    r.records.push_back(std::move(j));
  }
  const double v = rootdata::closed_form_log_volume({Series::A, 2, 1}).value();
  const double sphere = 2.0 * pi * pi * std::pow(std::sqrt(2.0), 3);
  const double sphere_rel = std::abs(v / sphere - 1.0);
  Json j = detail::item(2, seed);
  j["group"] = "SU(2)";
  j["volume"] = v;
  j["sphere_oracle"] = sphere;
  j["relative_difference"] = sphere_rel;
  r.records.push_back(std::move(j));
  r.pass = worst <= 1e-10 && sphere_rel <= 1e-10;
  r.detail = fmt::format("max relative difference {:.3g}; SU(2) vs 3-sphere {:.3g}", worst, sphere_rel);
  r.runtime_ms = sw.ms();
  return r;
}

/// normalized ratio * sqrt(n / (2 pi e)) in [0.9, 1.1] at n = 100, and closer to 1 at 200 than at 50.
inline CriterionResult ratio_asymptotics(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{3, "ratio asymptotics", true, {}, {}, 0.0};
  auto scaled = [](Series s, int n) { return rootdata::normalized_volume_ratio(s, n) * std::sqrt(n / (two_pi * e_const)); };
  std::vector<std::string> notes;
  for (Series s : {Series::A, Series::B, Series::C, Series::D}) {
    const double v50 = scaled(s, 50);
    const double v100 = scaled(s, 100);
    const double v200 = scaled(s, 200);
    const bool in_band = v100 >= 0.9 && v100 <= 1.1;
    const bool improving = std::abs(v200 - 1.0) < std::abs(v50 - 1.0);
    const auto vr = rootdata::volume_ratio(s, 100);
    Json j = detail::item(3, seed);
    j["series"] = std::string(1, series_letter(s));
    j["scaled_50"] = v50;
    j["scaled_100"] = v100;
    j["scaled_200"] = v200;
    j["over_series_asymptote_100"] = vr.normalized / vr.asymptote;
    j["pass"] = in_band && improving;
    r.records.push_back(std::move(j));
    if (!(in_band && improving)) r.pass = false;
    notes.push_back(fmt::format("{}: {:.4f}{}", series_letter(s), v100, in_band && improving ? "" : " (out)"));
  }
  r.detail = fmt::format("scaled value at n=100: {}", fmt::join(notes, ", "));
  r.runtime_ms = sw.ms();
  return r;
}

inline constexpr double cpn_epsilon = 0.2;
inline constexpr std::int64_t cpn_trials = 100'000;

/// P(xi <= pi/2 - 0.2) = cos^{2n}(0.2) by both samplers, and the samplers agree (two-sample KS).
inline CriterionResult cpn_concentration(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{4, "CP^n concentration law", true, {}, {}, 0.0};
  const double cut = sampling::half_pi - cpn_epsilon;
  std::vector<std::string> notes;
  for (int n : {5, 20, 100}) {
    const RandomStream base{seed, 4000u + static_cast<std::uint64_t>(n)};
    const auto inv = draw_many(cpn_trials, base.child(0), [n](Rng& rng) { return sampling::sample_cpn_angles(n, rng).xi; });
    const auto haar = draw_many(cpn_trials, base.child(1), [n](Rng& rng) {
      return std::acos(std::sqrt(std::clamp(sampling::cpn_point_from_haar(n, rng), 0.0, 1.0)));
    });
    const double exact = concentration::cpn_band_mass(n, cpn_epsilon);
    bool ok = true;
    for (const auto* xs : {&inv, &haar}) {
      const auto k = std::count_if(xs->begin(), xs->end(), [cut](double x) { return x <= cut; });
      const double p = static_cast<double>(k) / cpn_trials;
      const double hw = stats::binomial_halfwidth(k, cpn_trials);
      const bool within = std::abs(p - exact) <= hw;
      ok = ok && within;
      Json j = detail::item(4, seed);
      j["n"] = n;
      j["route"] = xs == &inv ? "inverse-cdf" : "haar-vector";
      j["epsilon"] = cpn_epsilon;
      j["exact"] = exact;
      j["mc"] = p;
      j["halfwidth"] = hw;
      j["trials"] = cpn_trials;
      j["pass"] = within;
      r.records.push_back(std::move(j));
    }
    const auto ks = stats::ks_two_sample(inv, haar);
    Json j = detail::item(4, seed);
    j["n"] = n;
    j["ks_statistic"] = ks.statistic;
    j["ks_p_value"] = ks.p_value;
    j["pass"] = ks.passes(0.01);
    r.records.push_back(std::move(j));
    ok = ok && ks.passes(0.01);
    if (!ok) r.pass = false;
    notes.push_back(fmt::format("n={} KS p={:.3f}{}", n, ks.p_value, ok ? "" : " (fail)"));
  }
  r.runtime_ms = sw.ms();
  const bool fast = r.runtime_ms < 60'000.0;
  r.pass = r.pass && fast;
  r.detail = fmt::format("{}", fmt::join(notes, ", "));
  if (!fast) r.detail += fmt::format("; runtime {:.0f} ms exceeds 60 s", r.runtime_ms);
  return r;
}

inline constexpr double zn_delta = 0.3;

/// Z_n normalization for n <= 200 and tail mass outside (pi - 0.3, pi + 0.3) for n >= 80.
inline CriterionResult circle_z(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{5, "circle family Z_n", true, {}, {}, 0.0};
  double worst_norm = 0.0;
  for (int n = 1; n <= 200; ++n) worst_norm = std::max(worst_norm, std::abs(examples::CircleFamilyZ{n}.total_mass() - 1.0));
  Json jn = detail::item(5, seed);
  jn["n_max"] = 200;
  jn["max_normalization_error"] = worst_norm;
  r.records.push_back(std::move(jn));
  r.pass = worst_norm < 1e-8;
  std::vector<std::string> bad;
  for (int n : {80, 100, 150, 200}) {
    const double tail = examples::zn_mass_outside(n, zn_delta);
    Json j = detail::item(5, seed);
    j["n"] = n;
    j["delta"] = zn_delta;
    j["mass_outside"] = tail;
    j["pass"] = tail < 0.01;
    r.records.push_back(std::move(j));
    if (!(tail < 0.01)) bad.push_back(fmt::format("n={} tail {:.4f}", n, tail));
  }
  r.pass = r.pass && bad.empty();
  r.detail = fmt::format("normalization error {:.3g}; {}", worst_norm,
                         bad.empty() ? std::string("all tails < 0.01") : fmt::format("{}", fmt::join(bad, ", ")));
  r.runtime_ms = sw.ms();
  return r;
}

inline constexpr std::int64_t hilbert_trials = 10'000;

/// E<e_1, X_N>^2 = 1/N within 3 standard errors, and P(|<e_1, X_N>| > 0.1) <= 0.02 at N = 10^4.
inline CriterionResult hilbert_pushforward(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{6, "Hilbert-ball pushforward", true, {}, {}, 0.0};
  std::vector<std::string> notes;
  for (int N : {10, 100, 10'000}) {
    Eigen::VectorXd e1 = Eigen::VectorXd::Unit(1, 0);
    const auto m = examples::hilbert_coordinate_moment(N, e1, hilbert_trials, RandomStream{seed, 6000u + static_cast<std::uint64_t>(N)});
    const bool ok = std::abs(m.estimate - m.exact) <= 3.0 * m.std_error;
    Json j = detail::item(6, seed);
    j["N"] = N;
    j["estimate"] = m.estimate;
    j["std_error"] = m.std_error;
    j["exact"] = m.exact;
    j["trials"] = m.trials;
    j["pass"] = ok;
    r.records.push_back(std::move(j));
    if (!ok) r.pass = false;
    notes.push_back(fmt::format("N={}: {:.3g}/{:.3g}", N, m.estimate, m.exact));
  }
  const int N = 10'000;
  const auto action = examples::ActionSpec::hilbert(N, N);
  const Eigen::VectorXd x = Eigen::VectorXd::Unit(N, 0);
  const examples::WeakCylinder target{Eigen::VectorXd::Unit(1, 0), Eigen::VectorXd::Zero(1), 0.1, true};
  const auto est = examples::induced_measure(action, x, target, hilbert_trials, RandomStream{seed, 6999});
  Json j = detail::item(6, seed);
  j["N"] = N;
  j["target"] = est.target;
  j["probability"] = est.probability;
  j["halfwidth"] = est.halfwidth;
  j["trials"] = est.trials;
  j["pass"] = est.probability <= 0.02;
  r.records.push_back(std::move(j));
  r.pass = r.pass && est.probability <= 0.02;
  r.detail = fmt::format("moments {}; P(|<e1,X>|>0.1) = {:.4f}", fmt::join(notes, ", "), est.probability);
  r.runtime_ms = sw.ms();
  return r;
}

/// W^{1,2} norm 1 (1e-6) and L^2 norm 1/sqrt(n^2+1) (1e-8) at 20n nodes.
inline CriterionResult sobolev(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{7, "Sobolev example", true, {}, {}, 0.0};
  double worst_w = 0.0;
  double worst_l = 0.0;
  for (int n : {1, 10, 100}) {
    const auto s = examples::sobolev_norms(n, 20 * n);
    const double l2 = 1.0 / std::sqrt(n * static_cast<double>(n) + 1.0);
    worst_w = std::max(worst_w, std::abs(s.w12_norm - 1.0));
    worst_l = std::max(worst_l, std::abs(s.l2_norm - l2));
    Json j = detail::item(7, seed);
    j["n"] = n;
    j["points"] = 20 * n;
    j["w12_norm"] = s.w12_norm;
    j["l2_norm"] = s.l2_norm;
    j["l2_exact"] = l2;
    r.records.push_back(std::move(j));
  }
  r.pass = worst_w <= 1e-6 && worst_l <= 1e-8;
  r.detail = fmt::format("max |W12 - 1| = {:.3g}, max L2 error = {:.3g}", worst_w, worst_l);
  r.runtime_ms = sw.ms();
  return r;
}

inline constexpr int haar_samples = 1000;
inline constexpr double haar_tolerance = 1e-10;

/// Membership residuals of Haar samples and first-coordinate laws.
inline CriterionResult haar_hygiene(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{8, "Haar sampler hygiene", true, {}, {}, 0.0};
  std::vector<std::string> bad;
  for (int n : {2, 10, 50}) {
    std::uint64_t sub = 0;
    for (auto g : {sampling::ClassicalGroup::SO, sampling::ClassicalGroup::SU, sampling::ClassicalGroup::U,
                   sampling::ClassicalGroup::USp}) {
      const RandomStream st{seed, 8000u + 10u * static_cast<std::uint64_t>(n) + sub++};
      const auto res = draw_many(haar_samples, st, [g, n](Rng& rng) {
        return sampling::membership_residual(sampling::sample_haar(g, n, rng));
      });
      const double worst = *std::max_element(res.begin(), res.end());
      Json j = detail::item(8, seed);
      j["group"] = sampling::group_label(g);
      j["n"] = n;
      j["samples"] = haar_samples;
      j["max_residual"] = worst;
      j["pass"] = worst < haar_tolerance;
      r.records.push_back(std::move(j));
      if (!(worst < haar_tolerance)) bad.push_back(fmt::format("{}({}) residual {:.3g}", sampling::group_label(g), n, worst));
    }
    // real: x_1^2 of a Haar SO(n) column ~ Beta(1/2, (n-1)/2)
    const auto real = draw_many(haar_samples, RandomStream{seed, 8500u + static_cast<std::uint64_t>(n)}, [n](Rng& rng) {
      const Eigen::MatrixXd q = sampling::haar_special_orthogonal(n, rng);
      return q(0, 0) * q(0, 0);
    });
    // complex: |z_1|^2 of a Haar column of C^{n+1} ~ Beta(1, n)
    const auto cplx = draw_many(haar_samples, RandomStream{seed, 8600u + static_cast<std::uint64_t>(n)}, [n](Rng& rng) {
      return std::norm(sampling::haar_unitary(n + 1, rng)(0, 0));
    });
    const auto ks_real = stats::ks_one_sample(real, stats::beta_cdf(0.5, 0.5 * (n - 1)));
    const auto ks_cplx = stats::ks_one_sample(cplx, stats::beta_cdf(1.0, n));
    for (const auto& [label, ks] : {std::pair{"real", ks_real}, std::pair{"complex", ks_cplx}}) {
      Json j = detail::item(8, seed);
      j["n"] = n;
      j["law"] = label;
      j["ks_statistic"] = ks.statistic;
      j["ks_p_value"] = ks.p_value;
      j["pass"] = ks.passes(0.01);
      r.records.push_back(std::move(j));
      if (!ks.passes(0.01)) bad.push_back(fmt::format("n={} {} KS p={:.4f}", n, label, ks.p_value));
    }
  }
  r.pass = bad.empty();
  r.detail = bad.empty() ? std::string("residuals and KS tests pass") : fmt::format("{}", fmt::join(bad, ", "));
  r.runtime_ms = sw.ms();
  return r;
}

/// Every two-plane rotation generator has orbit length 2 pi.
inline CriterionResult standard_normalization(std::uint64_t seed) {
  detail::Stopwatch sw;
  CriterionResult r{9, "standard normalization", true, {}, {}, 0.0};
  double worst = 0.0;
  int count = 0;
  for (const auto& a : detail::chi_algebras()) {
    const auto b = liealg::build_basis(a);
    double w = 0.0;
    int c = 0;
    for (const auto& l : b.labels) {
      if (l.kind != liealg::GeneratorKind::A && l.kind != liealg::GeneratorKind::U) continue;
      w = std::max(w, std::abs(liealg::orbit_length_check(b, l.i, l.j) - two_pi));
      ++c;
    }
    Json j = detail::item(9, seed);
    j["algebra"] = a.name();
    j["generators"] = c;
    j["max_deviation"] = w;
    r.records.push_back(std::move(j));
    worst = std::max(worst, w);
    count += c;
  }
  r.pass = worst <= 1e-10 && count > 0;
  r.detail = fmt::format("{} generators, max |L - 2 pi| = {:.3g}", count, worst);
  r.runtime_ms = sw.ms();
  return r;
}

using Check = std::function<CriterionResult(std::uint64_t)>;

inline std::vector<Check> all_checks() {
  return {chi_brute_force, volume_agreement, ratio_asymptotics, cpn_concentration, circle_z,
          hilbert_pushforward, sobolev, haar_hygiene, standard_normalization};
}

inline Json summary_record(const CriterionResult& c, std::uint64_t seed) {
  Json j = record::make("criterion", seed);
  j["id"] = c.id;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["detail"] = c.detail;
  return j;
}

}  // namespace levylab::suite
