#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "test_support.hpp"

using namespace motionlab;
using namespace testsupport;

namespace {

PointCloud make_cloud(std::vector<Point> pts) {
  PointCloud c;
  c.points = std::move(pts);
  return c;
}

ScaleCounts synthetic_dyadic(int k_lo, int k_hi, double base) {
  ScaleCounts c;
  c.kind = ScaleKind::Dyadic;
  c.cloud_size = 1u << 30;
  c.distinct_points = c.cloud_size;
  for (int k = k_lo; k <= k_hi; ++k) c.entries.push_back({double(k), static_cast<std::size_t>(std::pow(base, k))});
  return c;
}

PointCloud uniform_square(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(rng.uniform(), rng.uniform());
  return make_cloud(std::move(pts));
}

}  // namespace

TEST(BoxCounts, TwoPointsAtLevelOne) {
  const auto c = dyadic_box_counts(make_cloud({{0.0, 0.0}, {0.75, 0.0}}), 1, 1);
  ASSERT_EQ(c.entries.size(), 1u);
  EXPECT_EQ(c.entries[0].count, 2u);
}

TEST(BoxCounts, SinglePointCountsOne) {
  const auto c = dyadic_box_counts(make_cloud({{0.3, 0.4}}), 0, 20);
  for (const auto& e : c.entries) EXPECT_EQ(e.count, 1u);
  EXPECT_ML_ERROR(minkowski_estimate(c), ErrorKind::DegenerateCloud);
}

TEST(BoxCounts, UniformSegmentDoubles) {
  CounterRng rng(1);
  std::vector<Point> pts;
  for (int i = 0; i < 10000; ++i) pts.emplace_back(rng.uniform(), 0.0);
  const auto c = dyadic_box_counts(make_cloud(pts), 1, 10);
  for (const auto& e : c.entries) {
    const double expected = std::ldexp(1.0, static_cast<int>(e.scale));
    if (expected <= 64) {
      EXPECT_EQ(static_cast<double>(e.count), expected);
    }
    EXPECT_LE(static_cast<double>(e.count), expected);
    EXPECT_GE(static_cast<double>(e.count), 0.95 * expected);
  }
}

TEST(BoxCounts, MatchOrderedSetOracle) {
  CounterRng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 3000; ++i) pts.emplace_back(rng.uniform(-3, 3), rng.uniform(-3, 3) * rng.uniform());
    const auto c = dyadic_box_counts(make_cloud(pts), 0, 30);
    for (const auto& e : c.entries) EXPECT_EQ(e.count, oracle_box_count(pts, static_cast<int>(e.scale)));
  }
}

TEST(BoxCounts, HalfOpenCells) {
  // 0.5 belongs to [1/2, 1), not [0, 1/2)
  const auto c = dyadic_box_counts(make_cloud({{0.5, 0.0}, {0.4999, 0.0}, {-0.25, 0.0}}), 1, 1);
  EXPECT_EQ(c.entries[0].count, 3u);
}

TEST(BoxCounts, Monotone) {
  const auto c = dyadic_box_counts(render_limit_set(cantor_ifs(), ChaosGame{5000, 3}), 0, 40);
  for (std::size_t i = 1; i < c.entries.size(); ++i) EXPECT_GE(c.entries[i].count, c.entries[i - 1].count);
  EXPECT_EQ(c.entries.back().count, c.distinct_points);
}

TEST(BoxCounts, Errors) {
  EXPECT_ML_ERROR(dyadic_box_counts(make_cloud({}), 0, 3), ErrorKind::DegenerateCloud);
  EXPECT_ML_ERROR(dyadic_box_counts(make_cloud({{NAN, 0.0}}), 0, 3), ErrorKind::DegenerateCloud);
  EXPECT_ML_ERROR(dyadic_box_counts(make_cloud({{0.0, 0.0}}), 0, 53), ErrorKind::ScaleOverflow);
  EXPECT_ML_ERROR(dyadic_box_counts(make_cloud({{1e6, 0.0}}), 0, 50), ErrorKind::ScaleOverflow);
  EXPECT_ML_ERROR(dyadic_box_counts(make_cloud({{0.0, 0.0}}), 4, 3), ErrorKind::InvalidArgument);
}

TEST(MinkowskiEstimate, ExactPowerLaws) {
  const auto one = minkowski_estimate(synthetic_dyadic(2, 10, 2.0), WindowSpec::range(2, 10));
  EXPECT_NEAR(one.value, 1.0, 1e-12);
  EXPECT_NEAR(one.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(one.slope_stderr, 0.0, 1e-6);
  EXPECT_EQ(one.scales_used, 9u);
  EXPECT_NEAR(minkowski_estimate(synthetic_dyadic(2, 10, 4.0), WindowSpec::range(2, 10)).value, 2.0, 1e-12);
}

TEST(MinkowskiEstimate, RangeWindowSelectsScales) {
  const auto e = minkowski_estimate(synthetic_dyadic(0, 12, 2.0), WindowSpec::range(3, 7));
  EXPECT_EQ(e.scales_used, 5u);
  EXPECT_EQ(e.x_lo, 3.0);
  EXPECT_EQ(e.x_hi, 7.0);
}

TEST(MinkowskiEstimate, AutoWindowDropsCoarseAndSaturated) {
  // 2^k counts, 2^20 points: saturation cap 2^16, so k = 2..16 are used
  auto c = synthetic_dyadic(0, 20, 2.0);
  c.cloud_size = 1u << 20;
  const auto e = minkowski_estimate(c);
  EXPECT_EQ(e.x_lo, 2.0);
  EXPECT_EQ(e.x_hi, 16.0);
}

TEST(MinkowskiEstimate, WindowTooSmall) {
  EXPECT_ML_ERROR(minkowski_estimate(synthetic_dyadic(0, 4, 2.0), WindowSpec::range(1, 2)), ErrorKind::WindowTooSmall);
  EXPECT_ML_ERROR(minkowski_estimate(synthetic_dyadic(0, 3, 2.0)), ErrorKind::WindowTooSmall);
}

TEST(MinkowskiEstimate, CantorDeterministicDepth12) {
  const auto cloud = render_limit_set(cantor_ifs(), Deterministic{12});
  const auto e = minkowski_estimate(dyadic_box_counts(cloud, 0, 40));
  EXPECT_NEAR(e.value, kCantorDim, 0.05);
  EXPECT_LE(e.lower_diagnostic, e.value + 1e-12);
}

TEST(MinkowskiEstimate, UniformSquare) {
  const auto e = minkowski_estimate(dyadic_box_counts(uniform_square(100000, 4), 0, 40));
  EXPECT_NEAR(e.value, 2.0, 0.1);
}

TEST(MinkowskiEstimate, RejectsPackingCounts) {
  ScaleCounts c = synthetic_dyadic(0, 5, 2.0);
  c.kind = ScaleKind::Packing;
  EXPECT_ML_ERROR(minkowski_estimate(c), ErrorKind::InvalidArgument);
  EXPECT_ML_ERROR(packing_estimate(synthetic_dyadic(0, 5, 2.0)), ErrorKind::InvalidArgument);
}

TEST(PackingCounts, TwoPoints) {
  const auto cloud = make_cloud({{0.0, 0.0}, {1.0, 0.0}});
  EXPECT_EQ(packing_counts(cloud, std::vector<double>{0.5}).entries[0].count, 2u);
  EXPECT_EQ(packing_counts(cloud, std::vector<double>{1.5}).entries[0].count, 1u);
  EXPECT_EQ(packing_counts(cloud, std::vector<double>{2.5}).entries[0].count, 1u);
}

TEST(PackingCounts, MatchAllPairsOracle) {
  const auto cloud = render_limit_set(cantor_ifs(), ChaosGame{2000, 8});
  const auto diams = dyadic_diameters(0, 14);
  const auto c = packing_counts(cloud, diams);
  ASSERT_EQ(c.entries.size(), diams.size());
  for (const auto& e : c.entries) EXPECT_EQ(e.count, oracle_packing_count(cloud.points, e.scale)) << e.scale;
  const auto sq = uniform_square(1500, 9);
  for (const auto& e : packing_counts(sq, diams).entries) EXPECT_EQ(e.count, oracle_packing_count(sq.points, e.scale));
}

TEST(PackingCounts, LargeDiameterGivesOne) {
  const auto cloud = uniform_square(500, 10);
  EXPECT_EQ(packing_counts(cloud, std::vector<double>{3.0}).entries[0].count, 1u);
}

TEST(PackingCounts, StopAboveCap) {
  const auto cloud = uniform_square(2000, 11);
  const auto c = packing_counts(cloud, dyadic_diameters(0, 20), std::size_t{100});
  EXPECT_LT(c.entries.size(), 21u);
  EXPECT_GT(c.entries.back().count, 100u);
}

TEST(PackingCounts, Errors) {
  const auto cloud = uniform_square(10, 12);
  EXPECT_ML_ERROR(packing_counts(cloud, std::vector<double>{0.5, 0.5}), ErrorKind::InvalidArgument);
  EXPECT_ML_ERROR(packing_counts(cloud, std::vector<double>{-1.0}), ErrorKind::InvalidArgument);
  EXPECT_ML_ERROR(packing_counts(make_cloud({}), std::vector<double>{1.0}), ErrorKind::DegenerateCloud);
}

TEST(PackingEstimate, ExactPowerLaw) {
  ScaleCounts c;
  c.kind = ScaleKind::Packing;
  c.cloud_size = c.distinct_points = 1u << 30;
  for (int k = 0; k <= 10; ++k) c.entries.push_back({std::ldexp(1.0, -k), static_cast<std::size_t>(1) << k});
  EXPECT_NEAR(packing_estimate(c, WindowSpec::range(0, 10)).value, 1.0, 1e-12);
}

TEST(PackingEstimate, CantorTriadicScales) {
  const auto cloud = render_limit_set(cantor_ifs(), Deterministic{12});
  std::vector<double> diams;
  for (int m = 0; m <= 12; ++m) diams.push_back(std::pow(3.0, -m) * 1.5);
  const auto e = packing_estimate(packing_counts(cloud, diams), WindowSpec::range(std::log2(1 / diams[1]), std::log2(1 / diams[9])));
  EXPECT_NEAR(e.value, kCantorDim, 1e-9);
}

TEST(PackingEstimate, LatticeSegment) {
  // greedy on j/4096 accepts exactly the multiples of δ = 2^-k
  std::vector<Point> pts;
  for (int j = 0; j < 4096; ++j) pts.emplace_back(j / 4096.0, 0.0);
  const auto c = packing_counts(make_cloud(std::move(pts)), dyadic_diameters(0, 12));
  for (const auto& e : c.entries) EXPECT_EQ(static_cast<double>(e.count), 1.0 / e.scale);
  EXPECT_NEAR(packing_estimate(c, WindowSpec::range(0, 12)).value, 1.0, 1e-12);
}

TEST(PackingEstimate, UniformSquareBiasIsBounded) {
  const auto cloud = uniform_square(100000, 13);
  const auto cap = static_cast<std::size_t>(std::pow(1e5, kSaturationExponent));
  const auto e = packing_estimate(packing_counts(cloud, dyadic_diameters(0, 40), cap));
  EXPECT_LE(e.value, 2.0 + 1e-9);
  EXPECT_NEAR(e.value, 2.0, 0.2);
}
