#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "levylab/concentration.hpp"
#include "levylab/families.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/stats.hpp"
#include "oracles.hpp"

using namespace levylab;
using namespace levylab::concentration;

TEST(SphereBand, MatchesSimpsonOracle) {
  for (int dim : {1, 2, 5, 20, 100}) {
    const double norm = oracle::simpson([dim](double t) { return std::pow(std::cos(t), dim - 1); }, 0.0, pi / 2);
    for (double eps : {0.05, 0.2, 0.7, 1.3}) {
      const double tail = oracle::simpson([dim](double t) { return std::pow(std::cos(t), dim - 1); }, eps, pi / 2);
      EXPECT_NEAR(sphere_band_mass(dim, eps), tail / norm, 1e-10) << dim << " " << eps;
    }
  }
}

TEST(SphereBand, EdgesAndMonotonicity) {
  EXPECT_DOUBLE_EQ(sphere_band_mass(7, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(sphere_band_mass(7, pi / 2), 0.0);
  double prev = 1.0;
  for (int dim = 1; dim <= 200; dim += 7) {
    const double m = sphere_band_mass(dim, 0.2);
    EXPECT_LT(m, prev);
    prev = m;
  }
  EXPECT_THROW(sphere_band_mass(0, 0.1), domain_violation);
  EXPECT_THROW(sphere_band_mass(3, -0.1), domain_violation);
}

TEST(CpnBand, ClosedFormAndIntegral) {
  // density of xi proportional to cos(xi) sin^{2n-1}(xi)
  for (int n : {1, 4, 30}) {
    auto f = [n](double x) { return std::cos(x) * std::pow(std::sin(x), 2 * n - 1); };
    const double eps = 0.25;
    const double mass = oracle::simpson(f, 0.0, pi / 2 - eps) / oracle::simpson(f, 0.0, pi / 2);
    EXPECT_NEAR(cpn_band_mass(n, eps), mass, 1e-11);
    EXPECT_NEAR(cpn_band_mass(n, eps), std::pow(std::cos(eps), 2 * n), 1e-15);
  }
}

TEST(Estimate, CpnMonteCarloCoversExact) {
  const double grid[] = {0.1, 0.2, 0.3};
  for (int n : {5, 20, 100}) {
    const auto rep = estimate_concentration(cpn_family(n), grid, 50'000, RandomStream{21, static_cast<std::uint64_t>(n)});
    ASSERT_EQ(rep.entries.size(), 3u);
    for (const auto& e : rep.entries) {
      ASSERT_TRUE(e.exact_mass.has_value());
      EXPECT_LE(std::abs(e.mc_mass - *e.exact_mass), e.mc_halfwidth) << n << " " << e.epsilon;
    }
    EXPECT_FALSE(rep.degenerate);
  }
}

TEST(Estimate, SphereCoordinateFamily) {
  const double grid[] = {0.05, 0.2};
  const auto rep = estimate_concentration(sphere_coordinate_family(30), grid, 40'000, RandomStream{22, 0});
  for (const auto& e : rep.entries) EXPECT_LE(std::abs(e.mc_mass - *e.exact_mass), e.mc_halfwidth);
}

TEST(Estimate, MedianIsUsedWithoutLocus) {
  ObservableFamily f;
  f.label = "shifted-uniform";
  f.n = 1;
  f.draw = [](Rng& rng) { return 10.0 + rng.uniform(); };
  const double grid[] = {0.25};
  const auto rep = estimate_concentration(f, grid, 20'000, RandomStream{23, 0});
  // |U - 1/2| > 1/4 has probability 1/2
  EXPECT_NEAR(rep.entries[0].mc_mass, 0.5, rep.entries[0].mc_halfwidth);
  EXPECT_FALSE(rep.entries[0].exact_mass.has_value());
}

TEST(Estimate, DegenerateAndGuards) {
  const double grid[] = {0.0, 0.1};
  const auto rep = estimate_concentration(constant_family(3.0, 4), grid, 1000, RandomStream{24, 0});
  EXPECT_TRUE(rep.degenerate);
  for (const auto& e : rep.entries) EXPECT_EQ(e.mc_mass, 0.0);
  EXPECT_THROW(estimate_concentration(constant_family(3.0, 4), grid, 999, RandomStream{24, 0}), domain_violation);
  EXPECT_THROW(estimate_concentration(ObservableFamily{}, grid, 1000, RandomStream{24, 0}), domain_violation);
}

TEST(Estimate, Deterministic) {
  const double grid[] = {0.2};
  const auto a = estimate_concentration(cpn_family(7), grid, 5000, RandomStream{25, 3});
  const auto b = estimate_concentration(cpn_family(7), grid, 5000, RandomStream{25, 3});
  EXPECT_EQ(a.entries[0].mc_mass, b.entries[0].mc_mass);
}

TEST(Trend, CpnIsLevyLike) {
  const double grid[] = {0.2, 0.3};
  std::vector<ConcentrationReport> parts;
  std::uint64_t id = 0;
  for (int n : {5, 20, 80}) parts.push_back(estimate_concentration(cpn_family(n), grid, 20'000, RandomStream{26, id++}));
  const auto merged = merge_reports(parts);
  EXPECT_EQ(merged.entries.size(), 6u);
  const auto verdicts = levy_trend(merged);
  ASSERT_EQ(verdicts.size(), 2u);
  for (const auto& v : verdicts) {
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.ns, (std::vector<int>{5, 20, 80}));
  }
}

TEST(Trend, FlatFamilyFailsAndTwoPointsAreInsufficient) {
  const double grid[] = {0.1};
  std::vector<ConcentrationReport> parts;
  std::uint64_t id = 0;
  // same sphere dimension under three labels: no decay
  for (int n : {1, 2, 3}) {
    auto f = sphere_coordinate_family(3);
    f.n = n;
    parts.push_back(estimate_concentration(f, grid, 5000, RandomStream{27, id++}));
  }
  EXPECT_FALSE(levy_trend(merge_reports(parts)).front().pass);
  parts.pop_back();
  EXPECT_THROW(levy_trend(merge_reports(parts)), insufficient_data_error);
}

TEST(Rescaling, ConstructorsAndGuards) {
  const auto lin = ScaledFamily::linear("circle-y", 1, 4);
  EXPECT_EQ(lin.scale_constants, (std::vector<double>{1, 2, 3, 4}));
  const auto quad = ScaledFamily::quadratic("circle-y", 2, 3);
  EXPECT_EQ(quad.scale_constants, (std::vector<double>{4, 9, 16}));
  EXPECT_THROW(ScaledFamily::custom("x", {1.0, 0.5}), domain_violation);
  EXPECT_THROW(ScaledFamily::custom("x", {0.0, 1.0}), domain_violation);

  const std::vector<double> ricci{0.5, 0.5, 0.5, 0.5};
  EXPECT_EQ(apply_rescaling(lin, ricci), (std::vector<double>{0.5, 1.0, 1.5, 2.0}));
  const std::vector<double> flat{0.5, 0.0, 0.5, 0.5};
  EXPECT_THROW(apply_rescaling(lin, flat), criterion_inapplicable_error);
  const std::vector<double> short_list{0.5};
  EXPECT_THROW(apply_rescaling(lin, short_list), domain_violation);
}

TEST(Stats, ClopperPearson) {
  const auto iv = stats::clopper_pearson(0, 100, 0.99);
  EXPECT_EQ(iv.lower, 0.0);
  EXPECT_NEAR(iv.upper, 1.0 - std::pow(0.005, 1.0 / 100), 1e-12);
  const auto full = stats::clopper_pearson(100, 100, 0.99);
  EXPECT_NEAR(full.lower, std::pow(0.005, 1.0 / 100), 1e-12);
  const auto mid = stats::clopper_pearson(50, 100, 0.99);
  EXPECT_LT(mid.lower, 0.5);
  EXPECT_GT(mid.upper, 0.5);
  EXPECT_NEAR(mid.upper - 0.5, 0.5 - mid.lower, 1e-12);
  EXPECT_THROW(stats::clopper_pearson(3, 2), domain_violation);
}

TEST(Stats, ClopperPearsonCoverage) {
  // hand-rolled generator over (p, n); nominal coverage 99%, exact intervals are conservative
  gen::Gen g(31);
  for (int c = 0; c < 6; ++c) {
    const double p = g.real(0.01, 0.5);
    const int n = g.integer(50, 400);
    const auto ks = draw_many(2000, RandomStream{32, static_cast<std::uint64_t>(c)}, [&](Rng& rng) {
      int k = 0;
      for (int i = 0; i < n; ++i) k += rng.uniform() < p ? 1 : 0;
      const auto iv = stats::clopper_pearson(k, n);
      return iv.lower <= p && p <= iv.upper ? 1.0 : 0.0;
    });
    double covered = 0.0;
    for (double x : ks) covered += x;
    EXPECT_GE(covered / 2000.0, 0.98) << p << " " << n;
  }
}

TEST(Stats, KolmogorovAndKs) {
  EXPECT_NEAR(stats::kolmogorov_q(1.36), 0.049, 1e-3);
  EXPECT_NEAR(stats::kolmogorov_q(1.63), 0.0098, 3e-4);
  EXPECT_EQ(stats::kolmogorov_q(0.0), 1.0);
  const auto u = draw_many(3000, RandomStream{33, 0}, [](Rng& rng) { return rng.uniform(); });
  EXPECT_TRUE(stats::ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).passes(0.01));
  EXPECT_FALSE(stats::ks_one_sample(u, [](double x) { return std::clamp(x * x, 0.0, 1.0); }).passes(0.01));
  EXPECT_THROW(stats::ks_one_sample(std::vector<double>{}, [](double x) { return x; }), insufficient_data_error);
}

TEST(Stats, MedianAndMean) {
  const std::vector<double> odd{3.0, 1.0, 2.0};
  const std::vector<double> even{4.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(stats::median(odd), 2.0);
  EXPECT_EQ(stats::median(even), 2.5);
  const auto m = stats::mean_and_stderr(even);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt((5.0 / 3.0) / 4.0), 1e-15);
}

TEST(Quadrature, KnownIntegralsAndResolution) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, pi), 2.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0), std::sqrt(pi), 1e-12);
}
