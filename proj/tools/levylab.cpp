// levylab: command-line driver for the concentration experiments.
//
// Exit status: 0 success, 1 numerical invariant failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>

#include "levylab/concentration.hpp"
#include "levylab/examples/actions.hpp"
#include "levylab/examples/circle.hpp"
#include "levylab/examples/sobolev.hpp"
#include "levylab/families.hpp"
#include "levylab/liealg.hpp"
#include "levylab/record.hpp"
#include "levylab/rootdata.hpp"
#include "levylab/sampling.hpp"
#include "levylab/stats.hpp"
#include "levylab/suite.hpp"

namespace {

using namespace levylab;
using record::Json;

struct Common {
  std::uint64_t seed = 42;
  std::optional<std::int64_t> trials;
  std::string format = "csv";
  std::string out;
  bool timing = false;

  [[nodiscard]] std::int64_t trials_or(std::int64_t fallback) const { return trials.value_or(fallback); }
};

// Raised when a computed invariant does not hold.
struct invariant_failure {
  std::string message;
};

class Clock {
 public:
  [[nodiscard]] double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Common& c, std::vector<Json> records, double runtime_ms) {
  if (c.timing) {
    for (auto& r : records) r["runtime_ms"] = runtime_ms;
  }
  const std::string text = record::render(records, record::parse_format(c.format));
  if (c.out.empty()) {
    std::cout << text << std::flush;
  } else {
    record::write_atomic(c.out, text);
  }
}

// ---------------------------------------------------------------------------

struct VolumeArgs {
  std::string series = "A";
  int n_min = 0;
  int n_max = 30;
};

std::vector<Json> run_volume(const Common& c, const VolumeArgs& a, bool& ok) {
  const Series s = parse_series(a.series);
  const int lo = std::max(a.n_min, min_series_parameter(s));
  if (a.n_max < lo) throw invalid_spec_error(fmt::format("--n-max must be >= {}", lo));
  std::vector<Json> out;
  for (int n = lo; n <= a.n_max; ++n) {
    const GroupSpec g{s, n, 1};
    const double closed = rootdata::closed_form_log_volume(g).log_value;
    const double mac = rootdata::macdonald_log_volume(rootdata::build_root_system(s, n), g.center_order).log_value;
    const double rel = std::abs(std::expm1(mac - closed));
    const auto row = rootdata::volume_row(s, n);
    Json j = record::make("volume", c.seed);
    j["series"] = a.series;
    j["n"] = n;
    j["group"] = g.name();
    j["log_volume"] = closed;
    j["ratio"] = row.ratio ? Json(std::exp(row.ratio->log_ratio)) : Json(nullptr);
    j["normalized_ratio"] = row.ratio ? Json(row.ratio->normalized) : Json(nullptr);
    j["asymptote"] = row.ratio ? Json(row.ratio->asymptote) : Json(nullptr);
    j["log_volume_macdonald"] = mac;
    j["relative_difference"] = rel;
    j["agree"] = rel <= 1e-10;
    ok = ok && rel <= 1e-10;
    out.push_back(std::move(j));
  }
  return out;
}

struct RatioArgs {
  std::string series = "A";
  std::vector<int> ns{50, 100, 200};
};

std::vector<Json> run_ratio(const Common& c, const RatioArgs& a) {
  const Series s = parse_series(a.series);
  std::vector<Json> out;
  for (int n : a.ns) {
    const auto r = rootdata::volume_ratio(s, n);
    Json j = record::make("ratio", c.seed);
    j["series"] = a.series;
    j["n"] = n;
    j["log_ratio"] = r.log_ratio;
    j["dimension_gap"] = r.dimension_gap;
    j["normalized"] = r.normalized;
    j["asymptote"] = r.asymptote;
    j["normalized_over_asymptote"] = r.normalized / r.asymptote;
    j["normalized_times_sqrt_n_over_2pie"] = r.normalized * std::sqrt(n / (two_pi * e_const));
    out.push_back(std::move(j));
  }
  return out;
}

struct ChiArgs {
  std::string series;
  int n = 0;
  std::string algebra;
  int size = 0;
};

std::vector<Json> run_chi(const Common& c, const ChiArgs& a) {
  liealg::AlgebraSpec spec;
  if (!a.algebra.empty()) {
    if (!a.series.empty()) throw invalid_spec_error("give either --series/--n or --algebra/--size");
    if (a.algebra == "su") spec = liealg::su(a.size);
    else if (a.algebra == "so") spec = liealg::so(a.size);
    else if (a.algebra == "usp") spec = liealg::usp(a.size);
    else throw invalid_spec_error(fmt::format("unknown algebra '{}' (su, so, usp)", a.algebra));
  } else {
    if (a.series.empty()) throw invalid_spec_error("give --series/--n or --algebra/--size");
    const GroupSpec g{parse_series(a.series), a.n, 1};
    validate(g);
    spec = liealg::algebra_of(g);
  }
  const auto basis = liealg::build_basis(spec);
  const auto sc = liealg::structure_constants(basis);
  const double jac = liealg::jacobi_residual(sc);
  Json j = record::make("chi", c.seed);
  j["algebra"] = spec.name();
  j["dim"] = spec.dimension();
  try {
    const auto k = liealg::chi_coefficient(sc);
    j["chi"] = k.chi;
    j["closed_form"] = spec.chi_closed_form();
    j["matches_closed_form"] = std::abs(k.chi - spec.chi_closed_form()) <= suite::chi_tolerance;
    j["spread"] = k.killing_diagonal_spread;
    j["ricci_bound"] = k.ricci_bound;
  } catch (const non_simple_error& e) {
    throw invariant_failure{e.what()};
  }
  j["jacobi_residual"] = jac;
  j["normalization_residual"] = liealg::normalization_residual(basis);
  if (jac > liealg::jacobi_tolerance) throw invariant_failure{fmt::format("Jacobi residual {:.3g}", jac)};
  return {j};
}

struct HaarArgs {
  std::string group = "SO";
  int n = 3;
  std::string dump;
};

std::vector<Json> run_haar_check(const Common& c, const HaarArgs& a, bool& ok) {
  const auto g = sampling::parse_group(a.group);
  if (a.n < 1) throw invalid_spec_error("--n must be >= 1");
  const std::int64_t samples = c.trials_or(1000);
  if (samples < 1) throw invalid_spec_error("--trials must be >= 1");
  const RandomStream st{c.seed, 0};

  std::vector<sampling::HaarSample> drawn(static_cast<std::size_t>(samples));
  for_each_chunk(samples, mc_chunk_size, [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
    Rng rng = st.engine(static_cast<std::uint64_t>(chunk));
    for (std::int64_t i = b; i < e; ++i) drawn[static_cast<std::size_t>(i)] = sampling::sample_haar(g, a.n, rng);
  });

  double worst = 0.0;
  std::vector<double> first;
  for (const auto& s : drawn) {
    worst = std::max(worst, sampling::membership_residual(s));
    first.push_back(std::norm(s.matrix(0, 0)));
  }
  Json j = record::make("haar-check", c.seed);
  j["group"] = sampling::group_label(g);
  j["n"] = a.n;
  j["matrix_size"] = drawn.front().matrix.rows();
  j["samples"] = samples;
  j["max_residual"] = worst;
  ok = worst < suite::haar_tolerance;

  // first-coordinate law: real sphere S^{d-1} gives Beta(1/2, (d-1)/2); complex C^d gives Beta(1, d-1)
  const auto d = static_cast<double>(drawn.front().matrix.rows());
  const bool real = g == sampling::ClassicalGroup::SO;
  const double alpha = real ? 0.5 : 1.0;
  const double beta = real ? 0.5 * (d - 1.0) : d - 1.0;
  if (d >= 2 && samples >= 2) {
    const auto ks = stats::ks_one_sample(first, stats::beta_cdf(alpha, beta));
    j["law"] = fmt::format("Beta({}, {})", alpha, beta);
    j["ks_statistic"] = ks.statistic;
    j["ks_p_value"] = ks.p_value;
    ok = ok && ks.passes(0.01);
  }
  j["pass"] = ok;

  if (!a.dump.empty()) {
    // row-major; complex groups store (re, im) pairs
    const auto rows = drawn.front().matrix.rows();
    const auto per = static_cast<std::uint32_t>(rows * rows * (real ? 1 : 2));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(per) * drawn.size());
    for (const auto& s : drawn)
      for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index col = 0; col < rows; ++col) {
          values.push_back(s.matrix(r, col).real());
          if (!real) values.push_back(s.matrix(r, col).imag());
        }
    std::ostringstream os;
    sampling::write_sample_dump(os, per, values);
    record::write_atomic(a.dump, os.str());
  }
  return {j};
}

struct CpnArgs {
  std::vector<int> ns{5, 20, 80};
  std::vector<double> eps{0.1, 0.2, 0.3};
  std::string route = "inverse";
  std::string plot;
};

std::vector<Json> run_cpn(const Common& c, const CpnArgs& a) {
  const std::int64_t trials = c.trials_or(100'000);
  std::vector<concentration::ConcentrationReport> parts;
  for (std::size_t i = 0; i < a.ns.size(); ++i) {
    const int n = a.ns[i];
    concentration::ObservableFamily f;
    if (a.route == "inverse") f = concentration::cpn_family(n);
    else if (a.route == "haar") f = concentration::cpn_family(n, sampling::HaarRoute::column);
    else if (a.route == "haar-matrix") f = concentration::cpn_family(n, sampling::HaarRoute::full_matrix);
    else throw invalid_spec_error(fmt::format("unknown route '{}' (inverse, haar, haar-matrix)", a.route));
    parts.push_back(concentration::estimate_concentration(f, a.eps, trials, RandomStream{c.seed, i}));
  }
  const auto report = concentration::merge_reports(parts);
  if (!a.plot.empty()) record::emit_plot_data(report, a.plot);
  auto out = record::concentration_records(report);
  for (auto& r : out) r["route"] = a.route;
  std::vector<int> distinct(a.ns);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() >= 3) {
    for (const auto& v : concentration::levy_trend(report)) {
      Json j = record::make("levy-trend", c.seed);
      j["family"] = report.family_label;
      j["epsilon"] = v.epsilon;
      j["ns"] = v.ns;
      j["pass"] = v.pass;
      out.push_back(std::move(j));
    }
  }
  return out;
}

struct CircleArgs {
  std::string family = "Z";
  std::vector<int> ns{10, 40, 80, 160};
  double delta = 0.3;
  double epsilon = 1.0;
};

std::vector<Json> run_circle(const Common& c, const CircleArgs& a) {
  std::vector<Json> out;
  if (a.family == "Y") {
    for (int n : a.ns) {
      Json j = record::make("circle-y", c.seed);
      j["n"] = n;
      j["diameter"] = examples::yn_diameter(n);
      j["epsilon"] = a.epsilon;
      j["tube_is_whole_space"] = examples::yn_tube_is_whole_space(n, a.epsilon);
      out.push_back(std::move(j));
    }
    return out;
  }
  if (a.family != "Z") throw invalid_spec_error(fmt::format("unknown circle family '{}' (Y, Z)", a.family));
  const std::int64_t trials = c.trials_or(10'000);
  const double grid[] = {a.delta};
  for (std::size_t i = 0; i < a.ns.size(); ++i) {
    const int n = a.ns[i];
    const examples::CircleFamilyZ z{n};
    const auto mass = examples::zn_mass_outside(n, a.delta);
    const auto rep =
        concentration::estimate_concentration(concentration::circle_z_family(n), grid, trials, RandomStream{c.seed, i});
    Json j = record::make("circle-z", c.seed);
    j["n"] = n;
    j["norm_const"] = z.norm_const();
    j["normalization_error"] = z.total_mass() - 1.0;
    j["delta"] = a.delta;
    j["exact"] = mass;
    j["mc"] = rep.entries.front().mc_mass;
    j["halfwidth"] = rep.entries.front().mc_halfwidth;
    j["trials"] = trials;
    out.push_back(std::move(j));
  }
  return out;
}

struct ActionArgs {
  std::string preset = "circle-rotation";
  int n = 3;
  double arc_length = 1.0;
  double threshold = 0.5;
  std::vector<int> weights{1, 2};
};

std::vector<Json> run_action(const Common& c, const ActionArgs& a, bool& ok) {
  using namespace examples;
  const RandomStream st{c.seed, 0};
  Json j = record::make("action", c.seed);
  j["preset"] = a.preset;

  if (a.preset == "u1") {
    const std::int64_t samples = c.trials_or(10'000);
    const auto grid = uniform_theta_grid(64);
    const double d = u1_min_displacement(a.weights, grid, samples, st);
    j["action"] = ActionSpec::u1(a.weights).describe();
    j["weights"] = a.weights;
    j["grid"] = 64;
    j["samples"] = samples;
    j["min_displacement"] = d;
    ok = d > 0.0;
    return {j};
  }

  const std::int64_t trials = c.trials_or(10'000);
  ActionSpec spec;
  Eigen::VectorXd x;
  std::optional<TargetSet> target;
  std::optional<double> exact;
  if (a.preset == "trivial-circle") {
    spec = ActionSpec::trivial(a.n, 1);
    x = Eigen::Vector2d(1.0, 0.0);
    target = Arc{-0.25, 0.5};
    exact = 1.0;
  } else if (a.preset == "circle-rotation") {
    spec = ActionSpec::fundamental(2);
    x = Eigen::Vector2d(1.0, 0.0);
    target = Arc{0.0, a.arc_length};
    exact = std::min(a.arc_length, two_pi) / two_pi;
  } else if (a.preset == "sphere-fundamental") {
    if (a.n < 2) throw invalid_spec_error("--n must be >= 2");
    if (a.threshold < 0.0 || a.threshold >= 1.0) throw invalid_spec_error("--threshold in [0, 1)");
    spec = ActionSpec::fundamental(a.n);
    x = Eigen::VectorXd::Unit(a.n, 0);
    target = HalfSpace{Eigen::VectorXd::Unit(a.n, 0), a.threshold};
    exact = 0.5 * (a.threshold == 0.0 ? 1.0 : boost::math::ibetac(0.5, 0.5 * (a.n - 1), a.threshold * a.threshold));
  } else if (a.preset == "axis-through-p") {
    spec = ActionSpec::axis_rotation(Eigen::Vector3d::UnitZ());
    x = Eigen::Vector3d::UnitZ();
    target = Ball{Eigen::Vector3d::UnitZ(), 0.1};
    exact = 1.0;
  } else if (a.preset == "axis-off-p") {
    spec = ActionSpec::axis_rotation(Eigen::Vector3d::UnitZ());
    x = Eigen::Vector3d::UnitX();
    target = HalfSpace{Eigen::Vector3d::UnitX(), 0.0};
    exact = 0.5;
  } else {
    throw invalid_spec_error(fmt::format(
        "unknown preset '{}' (trivial-circle, circle-rotation, sphere-fundamental, axis-through-p, axis-off-p, u1)",
        a.preset));
  }
  const auto est = induced_measure(spec, x, *target, trials, st);
  j["action"] = spec.describe();
  j["base_point"] = std::vector<double>(x.data(), x.data() + x.size());
  j["target"] = est.target;
  j["exact"] = exact ? Json(*exact) : Json(nullptr);
  j["probability"] = est.probability;
  j["halfwidth"] = est.halfwidth;
  j["trials"] = est.trials;
  return {j};
}

struct HilbertArgs {
  std::vector<int> Ns{10, 100, 10'000};
  std::vector<double> v{1.0};
  double threshold = 0.1;
};

std::vector<Json> run_hilbert(const Common& c, const HilbertArgs& a) {
  const std::int64_t trials = c.trials_or(10'000);
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(a.v.data(), static_cast<Eigen::Index>(a.v.size()));
  if (v.size() == 0) throw invalid_spec_error("--v needs at least one coordinate");
  if (!(a.threshold > 0.0)) throw invalid_spec_error("--threshold must be positive");
  std::vector<Json> out;
  for (std::size_t i = 0; i < a.Ns.size(); ++i) {
    const int N = a.Ns[i];
    const RandomStream st{c.seed, i};
    const auto m = examples::hilbert_coordinate_moment(N, v, trials, st.child(0));
    const int dim = std::max<int>(N, static_cast<int>(v.size()));
    const Eigen::VectorXd x = Eigen::VectorXd::Unit(dim, 0);
    const examples::WeakCylinder target{v, Eigen::VectorXd::Zero(1), a.threshold, true};
    const auto est = examples::induced_measure(examples::ActionSpec::hilbert(N, dim), x, target, trials, st.child(1));
    Json j = record::make("hilbert", c.seed);
    j["N"] = N;
    j["moment_estimate"] = m.estimate;
    j["moment_std_error"] = m.std_error;
    j["moment_exact"] = m.exact;
    j["threshold"] = a.threshold;
    j["tail_probability"] = est.probability;
    j["tail_halfwidth"] = est.halfwidth;
    // Chebyshev with E<v,X>^2 = m.exact for x = e_1
    j["chebyshev_bound"] = std::min(1.0, m.exact / (a.threshold * a.threshold));
    j["trials"] = trials;
    out.push_back(std::move(j));
  }
  return out;
}

struct SobolevArgs {
  std::vector<int> ns{1, 10, 100};
  int points = 0;
};

std::vector<Json> run_sobolev(const Common& c, const SobolevArgs& a, bool& ok) {
  std::vector<Json> out;
  for (int n : a.ns) {
    const int pts = a.points > 0 ? a.points : 20 * n;
    const auto s = examples::sobolev_norms(n, pts);
    const double l2 = 1.0 / std::sqrt(n * static_cast<double>(n) + 1.0);
    Json j = record::make("sobolev", c.seed);
    j["n"] = n;
    j["points"] = pts;
    j["w12_norm"] = s.w12_norm;
    j["l2_norm"] = s.l2_norm;
    j["l2_exact"] = l2;
    ok = ok && std::abs(s.w12_norm - 1.0) <= 1e-6 && std::abs(s.l2_norm - l2) <= 1e-8;
    out.push_back(std::move(j));
  }
  return out;
}

int run_suite(const Common& c) {
  const auto fmt_kind = record::parse_format(c.format);
  const std::string ext = fmt_kind == record::Format::csv ? "csv" : "json";
  std::vector<Json> summary;
  std::string stdout_text;
  bool all = true;
  for (const auto& check : suite::all_checks()) {
    auto r = check(c.seed);
    all = all && r.pass;
    if (c.timing) {
      for (auto& j : r.records) j["runtime_ms"] = r.runtime_ms;
    }
    Json s = suite::summary_record(r, c.seed);
    if (c.timing) s["runtime_ms"] = r.runtime_ms;
    summary.push_back(std::move(s));
    const std::string text = record::render(r.records, fmt_kind);
    if (c.out.empty()) {
      stdout_text += text;
      if (fmt_kind == record::Format::csv) stdout_text += '\n';
    } else {
      std::filesystem::create_directories(c.out);
      record::write_atomic(std::filesystem::path(c.out) / fmt::format("criterion-{}.{}", r.id, ext), text);
    }
    std::cerr << fmt::format("[{}] {} {}: {}\n", r.pass ? "PASS" : "FAIL", r.id, r.name, r.detail);
  }
  const std::string text = record::render(summary, fmt_kind);
  if (c.out.empty()) {
    std::cout << stdout_text << text << std::flush;
  } else {
    record::write_atomic(std::filesystem::path(c.out) / fmt::format("summary.{}", ext), text);
  }
  return all ? 0 : 1;
}

void add_common(CLI::App& app, Common& c) {
  app.add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app.add_option("--trials", c.trials, "Monte Carlo trials / samples");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "output file (suite: directory)");
  app.add_flag("--timing", c.timing, "add runtime_ms to records");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration-of-measure experiments on compact Lie groups and homogeneous spaces"};
  app.set_version_flag("--version", std::string(levylab::version));
  app.require_subcommand(1);
  Common common;
  add_common(app, common);
  app.fallthrough();

  VolumeArgs vol;
  auto* volume = app.add_subcommand("volume", "Macdonald volumes vs closed forms, with normalized ratios");
  volume->add_option("--series", vol.series, "A, B, C or D")->capture_default_str();
  volume->add_option("--n-min", vol.n_min, "first n (default: smallest valid)");
  volume->add_option("--n-max", vol.n_max, "last n")->capture_default_str();

  RatioArgs rat;
  auto* ratio = app.add_subcommand("ratio", "normalized volume ratios and their large-n equivalents");
  ratio->add_option("--series", rat.series, "A, B, C or D")->capture_default_str();
  ratio->add_option("--n", rat.ns, "values of n")->delimiter(',');

  ChiArgs chi;
  auto* chi_cmd = app.add_subcommand("chi", "Killing coefficient from brute-force structure constants");
  chi_cmd->add_option("--series", chi.series, "A, B, C or D");
  chi_cmd->add_option("--n", chi.n, "series parameter");
  chi_cmd->add_option("--algebra", chi.algebra, "su, so or usp");
  chi_cmd->add_option("--size", chi.size, "su(n), so(n), usp(2n): n");

  HaarArgs haar;
  auto* haar_cmd = app.add_subcommand("haar-check", "Haar sampler membership residuals and first-coordinate law");
  haar_cmd->add_option("--group", haar.group, "SO, SU, U or USp")->capture_default_str();
  haar_cmd->add_option("--n", haar.n, "n (USp: matrices are 2n x 2n)")->capture_default_str();
  haar_cmd->add_option("--dump", haar.dump, "binary sample dump");

  CpnArgs cpn;
  auto* cpn_cmd = app.add_subcommand("cpn", "concentration of CP^n near the hyperplane at infinity");
  cpn_cmd->add_option("--n", cpn.ns, "values of n")->delimiter(',');
  cpn_cmd->add_option("--epsilon", cpn.eps, "epsilon grid")->delimiter(',');
  cpn_cmd->add_option("--route", cpn.route, "inverse, haar or haar-matrix")->capture_default_str();
  cpn_cmd->add_option("--plot", cpn.plot, "also write n,epsilon,exact,mc,halfwidth CSV here");

  CircleArgs circ;
  auto* circle = app.add_subcommand("circle", "the circle families Y_n (metric) and Z_n (measure)");
  circle->add_option("--family", circ.family, "Y or Z")->capture_default_str();
  circle->add_option("--n", circ.ns, "values of n")->delimiter(',');
  circle->add_option("--delta", circ.delta, "Z: half-width around pi")->capture_default_str();
  circle->add_option("--epsilon", circ.epsilon, "Y: tube radius")->capture_default_str();

  ActionArgs act;
  auto* action = app.add_subcommand("action", "pushforward of Haar measure under a group action");
  action->add_option("--preset", act.preset,
                     "trivial-circle, circle-rotation, sphere-fundamental, axis-through-p, axis-off-p, u1")
      ->capture_default_str();
  action->add_option("--n", act.n, "N of SO(N)")->capture_default_str();
  action->add_option("--arc-length", act.arc_length, "circle-rotation: arc length")->capture_default_str();
  action->add_option("--threshold", act.threshold, "sphere-fundamental: half-space <e_1,y> > t")->capture_default_str();
  action->add_option("--weights", act.weights, "u1: nonzero weights")->delimiter(',');

  HilbertArgs hil;
  auto* hilbert = app.add_subcommand("hilbert", "SO(N) acting on truncations of the Hilbert ball");
  hilbert->add_option("--N", hil.Ns, "values of N")->delimiter(',');
  hilbert->add_option("--v", hil.v, "coordinates of v")->delimiter(',');
  hilbert->add_option("--threshold", hil.threshold, "tail event |<v,X>| > t")->capture_default_str();

  SobolevArgs sob;
  auto* sobolev = app.add_subcommand("sobolev", "norms of the orthonormal system sin(nx)/sqrt(pi(n^2+1))");
  sobolev->add_option("--n", sob.ns, "values of n")->delimiter(',');
  sobolev->add_option("--points", sob.points, "quadrature nodes (default 20n)");

  auto* suite_cmd = app.add_subcommand("suite", "run acceptance checks 1-9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Clock clock;
    bool ok = true;
    std::vector<Json> records;
    if (*volume) records = run_volume(common, vol, ok);
    else if (*ratio) records = run_ratio(common, rat);
    else if (*chi_cmd) records = run_chi(common, chi);
    else if (*haar_cmd) records = run_haar_check(common, haar, ok);
    else if (*cpn_cmd) records = run_cpn(common, cpn);
    else if (*circle) records = run_circle(common, circ);
    else if (*action) records = run_action(common, act, ok);
    else if (*hilbert) records = run_hilbert(common, hil);
    else if (*sobolev) records = run_sobolev(common, sob, ok);
    else if (*suite_cmd) return run_suite(common);
    emit(common, std::move(records), clock.ms());
    return ok ? 0 : 1;
  } catch (const invariant_failure& f) {
    Json j = record::make("error", common.seed);
    j["kind"] = "invariant";
    j["message"] = f.message;
    std::cerr << record::to_json(j) << '\n';
    return 1;
  } catch (const levylab::non_simple_error& e) {
    Json j = record::make("error", common.seed);
    j["kind"] = "invariant";
    j["message"] = e.what();
    std::cerr << record::to_json(j) << '\n';
    return 1;
  } catch (const levylab::basis_corruption_error& e) {
    Json j = record::make("error", common.seed);
    j["kind"] = "invariant";
    j["message"] = e.what();
    std::cerr << record::to_json(j) << '\n';
    return 1;
  } catch (const levylab::io_error& e) {
    std::cerr << "levylab: " << e.what() << '\n';
    return 1;
  } catch (const levylab::error& e) {
    std::cerr << "levylab: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "levylab: " << e.what() << '\n';
    return 1;
  }
}
