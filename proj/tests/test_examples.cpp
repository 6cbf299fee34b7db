#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "levylab/examples/actions.hpp"
#include "levylab/examples/circle.hpp"
#include "levylab/examples/sobolev.hpp"
#include "levylab/sampling.hpp"
#include "levylab/stats.hpp"
#include "oracles.hpp"

using namespace levylab;
using namespace levylab::examples;

// ---------------------------------------------------------------------------
// Circle families

TEST(CircleY, DiameterAndTube) {
  EXPECT_DOUBLE_EQ(yn_diameter(1), 0.5);
  EXPECT_DOUBLE_EQ(yn_diameter(8), 1.0 / 16.0);
  EXPECT_TRUE(yn_tube_is_whole_space(4, 1.0));
  EXPECT_FALSE(yn_tube_is_whole_space(3, 1.0));
  EXPECT_THROW(yn_diameter(0), domain_violation);
  EXPECT_THROW(yn_tube_is_whole_space(3, 0.0), domain_violation);
  EXPECT_DOUBLE_EQ(CircleFamilyY{5}.metric_scale(), 1.0 / (10.0 * pi));
}

TEST(CircleZ, NormalizationUpTo200) {
  for (int n = 1; n <= 200; ++n) EXPECT_NEAR(CircleFamilyZ{n}.total_mass(), 1.0, 1e-8) << n;
}

TEST(CircleZ, NormConstantAgainstSimpson) {
  for (int n : {1, 3, 17}) {
    const double integral = oracle::simpson([n](double t) { return std::pow(std::sin(0.5 * t), 2 * n); }, 0.0, two_pi);
    EXPECT_NEAR(CircleFamilyZ{n}.norm_const() * integral, 1.0, 1e-11);
  }
  EXPECT_TRUE(std::isfinite(CircleFamilyZ{5000}.log_norm_const()));
}

TEST(CircleZ, MassOutsideElementaryCase) {
  for (double d : {0.1, 0.5, 2.0}) EXPECT_NEAR(zn_mass_outside(1, d), 1.0 - (d + std::sin(d)) / pi, 1e-10);
}

TEST(CircleZ, MassOutsideAgainstIncompleteBeta) {
  gen::Gen g(41);
  for (int c = 0; c < 40; ++c) {
    const int n = g.integer(1, 200);
    const double d = g.real(0.01, 3.1);
    EXPECT_NEAR(zn_mass_outside(n, d), oracle::zn_mass_outside(n, d), 1e-9) << n << " " << d;
  }
}

TEST(CircleZ, MassOutsideDecreasesInN) {
  for (double d : {0.1, 0.3, 1.0}) {
    double prev = 1.0;
    for (int n = 1; n <= 200; ++n) {
      const double m = zn_mass_outside(n, d);
      EXPECT_LT(m, prev) << n;
      prev = m;
    }
  }
  EXPECT_LT(zn_mass_outside(10, pi - 1e-6), 1e-12);
  EXPECT_THROW(zn_mass_outside(3, 0.0), domain_violation);
  EXPECT_THROW(zn_mass_outside(3, pi), domain_violation);
}

TEST(CircleZ, TailAt80And150) {
  // the tail at delta = 0.3 falls below 1% only from n = 147 on
  EXPECT_NEAR(zn_mass_outside(80, 0.3), 0.0569206, 1e-6);
  EXPECT_GT(zn_mass_outside(146, 0.3), 0.01);
  EXPECT_LT(zn_mass_outside(147, 0.3), 0.01);
}

TEST(CircleZ, SamplerLaw) {
  for (int n : {1, 12, 90}) {
    const CircleFamilyZ z{n};
    const auto th = draw_many(5000, RandomStream{42, static_cast<std::uint64_t>(n)}, [&](Rng& rng) { return z.sample(rng); });
    std::vector<double> half;
    int above = 0;
    for (double t : th) {
      ASSERT_GE(t, 0.0);
      ASSERT_LE(t, two_pi);
      half.push_back(0.5 * std::abs(t - pi));
      above += t > pi ? 1 : 0;
    }
    EXPECT_TRUE(stats::ks_one_sample(half, [n](double t) { return oracle::zn_half_deviation_cdf(n, t); }).passes(0.001));
    EXPECT_NEAR(above / 5000.0, 0.5, 0.03);
  }
}

// ---------------------------------------------------------------------------
// Pushforward measures

TEST(Actions, TrivialActionIsDirac) {
  gen::Gen g(43);
  for (int c = 0; c < 30; ++c) {
    const int m = g.integer(1, 4);
    const Eigen::VectorXd x = g.unit_vector(m + 1);
    TargetSet target;
    switch (g.integer(0, 2)) {
      case 0: target = HalfSpace{g.unit_vector(m + 1), g.real(-1.0, 1.0)}; break;
      case 1: target = Ball{g.unit_vector(m + 1), g.real(0.1, 1.5)}; break;
      default: target = WeakCylinder{g.unit_vector(m + 1), g.unit_vector(m + 1), g.real(0.05, 0.8), g.coin()};
    }
    const auto est = induced_measure(ActionSpec::trivial(g.integer(2, 5), m), x, target, 500, RandomStream{44, 0});
    EXPECT_TRUE(est.probability == 0.0 || est.probability == 1.0);
    EXPECT_EQ(est.probability, contains(target, x) ? 1.0 : 0.0);
  }
}

TEST(Actions, TrivialOnCircleFixesP) {
  const auto est = induced_measure(ActionSpec::trivial(3, 1), Eigen::Vector2d(0.0, 1.0), Arc{1.0, 1.0}, 2000,
                                   RandomStream{45, 0});
  EXPECT_EQ(est.probability, 1.0);
}

TEST(Actions, RotationOfCircleIsUniform) {
  for (double a : {0.5, 2.0, 5.0}) {
    const auto est = induced_measure(ActionSpec::fundamental(2), Eigen::Vector2d(1.0, 0.0), Arc{1.0, a}, 40'000,
                                     RandomStream{46, 0});
    EXPECT_LE(std::abs(est.probability - a / two_pi), est.halfwidth) << a;
    EXPECT_GE(est.probability, 0.0);
    EXPECT_LE(est.probability, 1.0);
  }
}

TEST(Actions, FundamentalSphereHalfSpace) {
  const int n = 4;
  const Eigen::VectorXd x = Eigen::VectorXd::Unit(n, 0);
  const auto est = induced_measure(ActionSpec::fundamental(n), x, HalfSpace{Eigen::VectorXd::Unit(n, 1), 0.3}, 40'000,
                                   RandomStream{47, 0});
  const double exact = 0.5 * boost::math::ibetac(0.5, 0.5 * (n - 1), 0.09);
  EXPECT_LE(std::abs(est.probability - exact), est.halfwidth);
}

TEST(Actions, AxisRotationOnTwoSphere) {
  const auto axis = Eigen::Vector3d(1.0, 1.0, 0.0);
  const auto spec = ActionSpec::axis_rotation(axis);
  // p on the axis is fixed
  const Eigen::Vector3d p = axis.normalized();
  EXPECT_EQ(induced_measure(spec, p, Ball{p, 1e-6}, 2000, RandomStream{48, 0}).probability, 1.0);
  // p off the axis sweeps a circle; half of it lies on each side of the plane through axis and p
  const Eigen::Vector3d q(0.0, 0.0, 1.0);
  const Eigen::Vector3d w = axis.normalized().cross(q);
  const auto est = induced_measure(spec, q, HalfSpace{w, 0.0}, 40'000, RandomStream{48, 1});
  EXPECT_LE(std::abs(est.probability - 0.5), est.halfwidth);
}

TEST(Actions, DomainViolations) {
  EXPECT_THROW(induced_measure(ActionSpec::fundamental(3), Eigen::Vector3d(1.0, 1.0, 0.0), Ball{Eigen::Vector3d::Zero(), 1.0},
                               100, RandomStream{49, 0}),
               domain_violation);
  EXPECT_THROW(induced_measure(ActionSpec::fundamental(3), Eigen::Vector2d(1.0, 0.0), Ball{Eigen::Vector3d::Zero(), 1.0},
                               100, RandomStream{49, 0}),
               domain_violation);
  EXPECT_THROW(induced_measure(ActionSpec::hilbert(3, 5), Eigen::VectorXd::Constant(5, 1.0), Ball{Eigen::Vector3d::Zero(), 1.0},
                               100, RandomStream{49, 0}),
               domain_violation);
  EXPECT_THROW(induced_measure(ActionSpec::u1({1, 0}), Eigen::Vector4d(1.0, 0.0, 0.0, 0.0), Ball{Eigen::Vector3d::Zero(), 1.0},
                               100, RandomStream{49, 0}),
               invalid_spec_error);
  EXPECT_THROW(contains(Arc{0.0, 1.0}, Eigen::Vector3d(1.0, 0.0, 0.0)), domain_violation);
}

TEST(Hilbert, OrbitLawMatchesDenseHaar) {
  // g.x for dense Haar g in SO(5) acting on the first 5 of 7 coordinates
  gen::Gen g(50);
  Eigen::VectorXd x = 0.9 * g.unit_vector(7);
  const Eigen::VectorXd v = g.unit_vector(7);
  const auto dense = draw_many(4000, RandomStream{51, 0}, [&](Rng& rng) {
    Eigen::VectorXd y = x;
    y.head(5) = sampling::haar_special_orthogonal(5, rng) * x.head(5);
    return v.dot(y);
  });
  const auto spec = ActionSpec::hilbert(5, 7);
  const auto orbit = draw_many(4000, RandomStream{51, 1}, [&](Rng& rng) { return v.dot(act_with_haar(spec, x, rng)); });
  EXPECT_TRUE(stats::ks_two_sample(dense, orbit).passes(0.001));
}

TEST(Hilbert, CoordinateMoments) {
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(1, 0);
  const auto one = hilbert_coordinate_moment(1, e1, 100, RandomStream{52, 0});
  EXPECT_DOUBLE_EQ(one.estimate, 1.0);
  EXPECT_DOUBLE_EQ(one.exact, 1.0);
  for (int N : {10, 100, 10'000}) {
    const auto m = hilbert_coordinate_moment(N, e1, 10'000, RandomStream{52, static_cast<std::uint64_t>(N)});
    EXPECT_NEAR(m.estimate, 1.0 / N, 3.0 * m.std_error) << N;
  }
  Eigen::VectorXd beyond = Eigen::VectorXd::Zero(20);
  beyond(15) = 1.0;
  const auto zero = hilbert_coordinate_moment(10, beyond, 100, RandomStream{52, 1});
  EXPECT_EQ(zero.estimate, 0.0);
  EXPECT_EQ(zero.exact, 0.0);
  Eigen::VectorXd mixed(3);
  mixed << 1.0, 2.0, 2.0;
  const auto mm = hilbert_coordinate_moment(50, mixed, 20'000, RandomStream{52, 2});
  EXPECT_NEAR(mm.exact, 9.0 / 50.0, 1e-15);
  EXPECT_NEAR(mm.estimate, mm.exact, 3.0 * mm.std_error);
}

TEST(Hilbert, TailAtTenThousand) {
  const int N = 10'000;
  const auto est = induced_measure(ActionSpec::hilbert(N, N), Eigen::VectorXd::Unit(N, 0),
                                   WeakCylinder{Eigen::VectorXd::Unit(1, 0), Eigen::VectorXd::Zero(1), 0.1, true}, 4000,
                                   RandomStream{53, 0});
  EXPECT_LE(est.probability, 0.02);
}

// ---------------------------------------------------------------------------
// U(1) action and the embedding J

TEST(U1, BlockActionSpecialAngles) {
  gen::Gen g(54);
  const std::vector<int> w{1, 1};
  for (int c = 0; c < 10; ++c) {
    const Eigen::VectorXd x = g.unit_vector(4);
    EXPECT_LT((u1_block_action(w, pi, x) + x).norm(), 1e-15);
    EXPECT_EQ(u1_block_action(w, 0.0, x), x);
    EXPECT_NEAR((u1_block_action(w, pi, x) - x).norm(), 2.0, 1e-14);
  }
  EXPECT_THROW(u1_block_action(std::vector<int>{1, 0}, 0.3, Eigen::Vector4d(1, 0, 0, 0)), invalid_spec_error);
  EXPECT_THROW(u1_block_action(w, 0.3, Eigen::Vector3d(1, 0, 0)), domain_violation);
}

TEST(U1, DisplacementFormula) {
  // |R x - x|^2 = sum_j r_j^2 4 sin^2(m_j theta / 2), r_j the norm of block j
  gen::Gen g(55);
  for (int c = 0; c < 50; ++c) {
    const int k = g.integer(1, 4);
    const auto w = g.nonzero_weights(k, 5);
    const Eigen::VectorXd x = g.unit_vector(2 * k);
    const double t = g.real(0.0, two_pi);
    double expect = 0.0;
    for (int j = 0; j < k; ++j) expect += x.segment(2 * j, 2).squaredNorm() * 4.0 * std::pow(std::sin(0.5 * w[j] * t), 2);
    EXPECT_NEAR((u1_block_action(w, t, x) - x).squaredNorm(), expect, 1e-13);
  }
}

TEST(U1, FixedPointFreeCertificate) {
  const auto grid = uniform_theta_grid(64);
  ASSERT_EQ(grid.size(), 64u);
  const std::vector<int> w{1, 2};
  EXPECT_GT(u1_min_displacement(w, grid, 10'000, RandomStream{56, 0}), 0.5);
  gen::Gen g(57);
  for (int c = 0; c < 8; ++c) {
    const auto ws = g.nonzero_weights(g.integer(1, 4), 6);
    EXPECT_GT(u1_min_displacement(ws, grid, 500, RandomStream{56, static_cast<std::uint64_t>(c + 1)}), 0.0);
  }
  EXPECT_THROW(u1_min_displacement(std::vector<int>{2, 0}, grid, 10, RandomStream{56, 0}), invalid_spec_error);
}

TEST(EmbeddingJ, IdentityPhaseAndHaar) {
  EXPECT_LT((embedding_J(Eigen::MatrixXcd::Identity(3, 3)) - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  const std::complex<double> ph = std::polar(1.0, 0.7);
  Eigen::MatrixXcd x(1, 1);
  x(0, 0) = ph;
  const auto j = embedding_J(x);
  EXPECT_LT(std::abs(j(1, 1) - std::conj(ph)), 1e-15);
  EXPECT_LT(std::abs(j.determinant() - 1.0), 1e-15);
  Rng rng = RandomStream{58, 0}.engine();
  for (int c = 0; c < 20; ++c) {
    const auto m = embedding_J(sampling::haar_unitary(3, rng));
    EXPECT_LT(sampling::membership_residual({sampling::ClassicalGroup::SU, 4, m}), 1e-10);
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(0, 1) = 1e-6;
  EXPECT_THROW(embedding_J(bad), domain_violation);
}

// ---------------------------------------------------------------------------
// Sobolev example

TEST(Sobolev, NormsAtMinimumResolution) {
  for (int n : {1, 10, 100}) {
    const auto s = sobolev_norms(n, 20 * n);
    EXPECT_NEAR(s.w12_norm, 1.0, 1e-6);
    EXPECT_NEAR(s.l2_norm, 1.0 / std::sqrt(n * n + 1.0), 1e-8);
  }
  EXPECT_NEAR(sobolev_norms(1, 20).l2_norm, 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(sobolev_norms(100, 2000).l2_norm, 0.0099995, 1e-7);
}

TEST(Sobolev, AgainstSimpson) {
  const int n = 3;
  const double l2 = oracle::simpson([n](double x) { return std::pow(sobolev_mode(n, x), 2); }, 0.0, two_pi);
  const double d2 = oracle::simpson([n](double x) { return std::pow(sobolev_mode_derivative(n, x), 2); }, 0.0, two_pi);
  const auto s = sobolev_norms(n, 97);
  EXPECT_NEAR(s.l2_norm, std::sqrt(l2), 1e-10);
  EXPECT_NEAR(s.w12_norm, std::sqrt(l2 + d2), 1e-10);
}

TEST(Sobolev, ResolutionGuard) {
  EXPECT_THROW(sobolev_norms(10, 199), resolution_error);
  EXPECT_NO_THROW(sobolev_norms(10, 200));
  EXPECT_THROW(sobolev_norms(0, 100), domain_violation);
}
