#include <cmath>

#include <gtest/gtest.h>

#include "levylab/rootdata.hpp"
#include "oracles.hpp"

using namespace levylab;
using rootdata::build_root_system;
using rootdata::closed_form_log_volume;
using rootdata::macdonald_log_volume;

namespace {

constexpr Series all_series[] = {Series::A, Series::B, Series::C, Series::D};

}  // namespace

TEST(RootSystem, CountsMatchDimensionAndRank) {
  for (Series s : all_series) {
    for (int n = min_series_parameter(s); n <= 12; ++n) {
      const auto rs = build_root_system(s, n);
      const int rank = group_rank(s, n);
      EXPECT_EQ(rs.rank, rank);
      EXPECT_EQ(static_cast<int>(rs.simple_roots.size()), rank);
      EXPECT_EQ(static_cast<int>(rs.invariant_degrees.size()), rank);
      EXPECT_EQ(static_cast<int>(rs.positive_roots.size()) * 2 + rank, group_dimension(s, n)) << series_letter(s) << n;
      // sum of (2 d_i - 1) is the dimension
      int sum = 0;
      for (int d : rs.invariant_degrees) sum += 2 * d - 1;
      EXPECT_EQ(sum, group_dimension(s, n));
    }
  }
}

TEST(RootSystem, CorootsAreTwoAlphaOverNorm) {
  const auto rs = build_root_system(Series::C, 3);
  ASSERT_EQ(rs.positive_roots.size(), rs.positive_coroots.size());
  for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
    const auto& a = rs.positive_roots[i];
    EXPECT_NEAR((rs.positive_coroots[i] - 2.0 * a / a.squaredNorm()).norm(), 0.0, 1e-15);
    EXPECT_NEAR(a.dot(rs.positive_coroots[i]), 2.0, 1e-14);
  }
}

TEST(RootSystem, WedgeNormOfOrthonormalSetIsOne) {
  std::vector<rootdata::Vector> vs{Eigen::VectorXd::Unit(3, 0), Eigen::VectorXd::Unit(3, 2)};
  EXPECT_DOUBLE_EQ(rootdata::wedge_norm(vs), 1.0);
  EXPECT_DOUBLE_EQ(rootdata::wedge_norm({}), 1.0);
  vs[1] *= 3.0;
  EXPECT_NEAR(rootdata::wedge_norm(vs), 3.0, 1e-14);
}

TEST(Volume, MacdonaldAgreesWithClosedFormUpTo30) {
  for (Series s : all_series) {
    for (int n = min_series_parameter(s); n <= 30; ++n) {
      const double a = macdonald_log_volume(build_root_system(s, n), 1).log_value;
      const double b = closed_form_log_volume({s, n, 1}).log_value;
      EXPECT_LE(std::abs(std::expm1(a - b)), 1e-10) << series_letter(s) << n;
    }
  }
}

TEST(Volume, ClosedFormsMatchSphereFibrations) {
  for (Series s : all_series) {
    for (int n = min_series_parameter(s); n <= 10; ++n) {
      const double lib = closed_form_log_volume({s, n, 1}).log_value;
      EXPECT_NEAR(lib, oracle::log_volume(s, n), 1e-11 * std::max(1.0, std::abs(lib))) << series_letter(s) << n;
    }
  }
}

TEST(Volume, SU2IsTheThreeSphereOfRadiusSqrt2) {
  const double v = closed_form_log_volume({Series::A, 2, 1}).value();
  EXPECT_NEAR(v / (2.0 * pi * pi * std::pow(std::sqrt(2.0), 3)), 1.0, 1e-14);
}

TEST(Volume, QuotientDividesByCenterOrder) {
  for (Series s : all_series) {
    const int n = 6;
    const int z = simply_connected_center_order(s, n);
    for (int k = 1; k <= z; ++k) {
      if (z % k != 0) continue;
      const double full = closed_form_log_volume({s, n, 1}).log_value;
      EXPECT_NEAR(closed_form_log_volume({s, n, k}).log_value, full - std::log(k), 1e-12);
      EXPECT_NEAR(macdonald_log_volume(build_root_system(s, n), k).log_value, full - std::log(k), 1e-9);
    }
  }
}

TEST(Volume, LargeNStaysFinite) {
  for (Series s : all_series) {
    const double lv = closed_form_log_volume({s, 400, 1}).log_value;
    EXPECT_TRUE(std::isfinite(lv));
    EXPECT_LT(lv, 0.0);  // volumes collapse
  }
}

TEST(GroupSpecValidation, RejectsBadInputs) {
  EXPECT_THROW(validate(GroupSpec{Series::A, 1, 1}), invalid_spec_error);
  EXPECT_THROW(validate(GroupSpec{Series::D, 3, 1}), invalid_spec_error);
  EXPECT_THROW(validate(GroupSpec{Series::A, 6, 4}), invalid_spec_error);
  EXPECT_THROW(validate(GroupSpec{Series::B, 3, 0}), invalid_spec_error);
  EXPECT_NO_THROW(validate(GroupSpec{Series::D, 4, 4}));
  EXPECT_THROW(closed_form_log_volume({Series::C, 1, 1}), invalid_spec_error);
  EXPECT_THROW(parse_series("E"), invalid_spec_error);
  EXPECT_EQ(parse_series("c"), Series::C);
}

TEST(GroupSpecNames, FollowTheSeries) {
  EXPECT_EQ((GroupSpec{Series::A, 3, 1}.name()), "SU(3)");
  EXPECT_EQ((GroupSpec{Series::B, 3, 1}.name()), "Spin(7)");
  EXPECT_EQ((GroupSpec{Series::C, 3, 2}.name()), "USp(6)/Z2");
  EXPECT_EQ((GroupSpec{Series::D, 4, 1}.name()), "Spin(8)");
  EXPECT_EQ(group_dimension(Series::C, 3), 21);
}

TEST(Ratio, SeriesAApproachesItsAsymptote) {
  const double at100 = rootdata::normalized_volume_ratio(Series::A, 100) * std::sqrt(100 / (two_pi * e_const));
  EXPECT_GE(at100, 0.9);
  EXPECT_LE(at100, 1.1);
}

TEST(Ratio, EverySeriesApproachesItsOwnAsymptote) {
  for (Series s : all_series) {
    double prev = 1e9;
    for (int n : {25, 50, 100, 200, 400}) {
      const auto r = rootdata::volume_ratio(s, n);
      const double gap = std::abs(r.normalized / r.asymptote - 1.0);
      EXPECT_LT(gap, prev) << series_letter(s) << n;
      prev = gap;
    }
    EXPECT_LT(prev, 0.01);
  }
}

TEST(Ratio, DimensionGapsAndExponents) {
  EXPECT_EQ(rootdata::volume_ratio(Series::A, 10).dimension_gap, 21);  // 2n+1
  EXPECT_EQ(rootdata::volume_ratio(Series::B, 10).dimension_gap, 39);  // 4n-1
  EXPECT_EQ(rootdata::volume_ratio(Series::C, 10).dimension_gap, 39);
  EXPECT_EQ(rootdata::volume_ratio(Series::D, 10).dimension_gap, 37);  // 4n-3
  const auto r = rootdata::volume_ratio(Series::C, 7);
  EXPECT_NEAR(std::log(r.normalized) * r.dimension_gap, r.log_ratio, 1e-12);
}

TEST(Ratio, MinimumParameters) {
  EXPECT_THROW(rootdata::volume_ratio(Series::A, 1), invalid_spec_error);
  EXPECT_THROW(rootdata::volume_ratio(Series::B, 2), invalid_spec_error);
  EXPECT_THROW(rootdata::volume_ratio(Series::D, 4), invalid_spec_error);
  EXPECT_NO_THROW(rootdata::volume_ratio(Series::D, 5));
  EXPECT_FALSE(rootdata::volume_row(Series::B, 2).ratio.has_value());
  EXPECT_TRUE(rootdata::volume_row(Series::B, 3).ratio.has_value());
}
