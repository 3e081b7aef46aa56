#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jensen_lab/shape_check.hpp"
#include "oracles.hpp"

using namespace jlab;

namespace {

constexpr double kThird = std::numbers::pi / 3;

FunctionSpec poly(std::vector<double> c, double lo, double hi) { return FunctionSpec::polynomial(std::move(c), Interval(lo, hi)); }

}  // namespace

TEST(ConvexOn, Examples) {
  EXPECT_TRUE(check_convex_on(poly({0, 0, 1}, 0, 1), Interval(0, 1)).satisfied);
  const Interval right(0, std::numbers::pi / 2 - 0.1);
  EXPECT_TRUE(check_convex_on(FunctionSpec::tan(right), right).satisfied);
  const auto v = check_convex_on(poly({0, 0, 0, 1}, -1, 1), Interval(-1, 1));
  EXPECT_FALSE(v.satisfied);
  EXPECT_LT(v.worst_point, 0.0);
  EXPECT_EQ(v.grid_size, 513);
}

TEST(ConvexOn, PiecewiseLinearExact) {
  const Interval iv(0, 3);
  EXPECT_TRUE(check_convex_on(FunctionSpec::piecewise_linear({{0, 1}, {1, 0}, {2, 0}, {3, 2}}, iv), iv).satisfied);
  const auto bad = check_convex_on(FunctionSpec::piecewise_linear({{0, 0}, {1, 1}, {2, 1.5}, {3, 3}}, iv), iv);
  EXPECT_FALSE(bad.satisfied);
  EXPECT_DOUBLE_EQ(bad.worst_point, 1.0);
  EXPECT_DOUBLE_EQ(bad.worst_margin, -0.5);
  const auto jump = check_convex_on(FunctionSpec::piecewise_linear({{0, 0}, {1, 0}, {1, 1}, {3, 3}}, iv), iv);
  EXPECT_FALSE(jump.satisfied);
  EXPECT_TRUE(check_convex_on(FunctionSpec::grid_samples({4, 1, 0, 1, 4}, Interval(-2, 2)), Interval(-2, 2)).satisfied);
}

TEST(ConvexOn, DomainViolation) {
  EXPECT_THROW(check_convex_on(poly({0, 1}, 0, 1), Interval(0, 2)), DomainError);
}

TEST(ConvexOn, GridConsistency) {
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  Settings coarse;
  Settings fine;
  fine.grid = 2 * coarse.grid - 1;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = poly({u(eng), u(eng), u(eng), u(eng)}, -1, 1);
    const auto a = check_convex_on(f, Interval(-1, 1), coarse);
    const auto b = check_convex_on(f, Interval(-1, 1), fine);
    if (std::abs(a.worst_margin) > 10 * coarse.shape_tol) EXPECT_EQ(a.satisfied, b.satisfied) << trial;
  }
}

TEST(PointSymmetry, Examples) {
  EXPECT_TRUE(check_point_symmetry(FunctionSpec::tan(Interval(-1, 1)), 0, Interval(-1, 1)).satisfied);
  EXPECT_TRUE(check_point_symmetry(poly({1, 0, 0, 1}, -1, 1), 0, Interval(-1, 1)).satisfied);
  EXPECT_FALSE(check_point_symmetry(poly({0, 0, 1}, -1, 1), 0, Interval(-1, 1)).satisfied);
}

TEST(PointSymmetry, ConstructiveFamiliesSelfVerify) {
  std::mt19937_64 eng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto base = poly({u(eng), u(eng), u(eng), u(eng)}, 0, 2);
    const auto odd = FunctionSpec::odd_extension(base, Interval(-2, 1.5));
    EXPECT_GE(check_point_symmetry(odd, 0, Interval(-2, 1.5)).worst_margin, -1e-12);
    const double c = u(eng) - 0.5;
    const auto right = poly({u(eng), u(eng), u(eng)}, c, 4);
    const auto ps = FunctionSpec::point_symmetric_extension(right, c, Interval(-1, 2));
    EXPECT_GE(check_point_symmetry(ps, c, Interval(-1, 2)).worst_margin, -1e-12);
  }
}

TEST(Chord, Examples) {
  const auto sq = poly({0, 0, 1}, -1, 2);
  const auto h = chord(sq, 0, 1);
  EXPECT_DOUBLE_EQ(h(0.5), 0.5);
  EXPECT_DOUBLE_EQ(h(-1), -1);
  EXPECT_EQ(h.domain(), sq.domain());

  const auto t = FunctionSpec::tan(Interval(-kThird, kThird));
  const auto ht = chord(t, 0, kThird);
  EXPECT_NEAR(ht(1.0), oracle::kTanChordSlope, 1e-14);
  EXPECT_NEAR(ht(kThird), std::tan(kThird), 1e-14);
  EXPECT_THROW(chord(sq, 1, 0), InputError);
}

TEST(Chord, HitsEndpointsExactly) {
  std::mt19937_64 eng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto f = FunctionSpec::tan(Interval(-1.2, 1.2));
  for (int trial = 0; trial < 100; ++trial) {
    double c = u(eng), d = u(eng);
    if (c > d) std::swap(c, d);
    if (c == d) continue;
    const auto h = chord(f, c, d);
    EXPECT_NEAR(h(c), f(c), 1e-12);
    EXPECT_NEAR(h(d), f(d), 1e-12);
  }
}

TEST(BuildAuxG, CubicOnMinusOneTwo) {
  const auto f = poly({0, 0, 0, 1}, -1, 2);
  const auto g = build_aux_g(f, Interval(-1, 2), 1.0, -1.0);
  EXPECT_NEAR(g(0.3), 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(g(1.5), 3.375);
  for (double x = -1; x <= 1; x += 0.125) EXPECT_GE(f(x) - g(x), x <= 0 ? -1e-9 : -2.0);
  for (double x = 1; x <= 2; x += 0.125) EXPECT_EQ(g(x), f(x));
}

TEST(BuildAuxG, TanSplitAtRightEnd) {
  const Interval iv(-kThird, kThird);
  const auto g = build_aux_g(FunctionSpec::tan(iv), iv, kThird, -kThird);
  EXPECT_NEAR(g(0.5), oracle::kTanChordSlope * 0.5, 1e-12);
  EXPECT_NEAR(g(-1.0), -oracle::kTanChordSlope, 1e-12);
}

TEST(BuildAuxG, DegenerateSplitReturnsF) {
  const auto f = poly({0, 0, 1}, 0, 1);
  const auto g = build_aux_g(f, Interval(0, 1), 0.0, 0.0);
  EXPECT_EQ(g.family(), Family::polynomial);
}

TEST(BuildAuxG, NonConvexResultThrows) {
  const auto f = poly({0, 0, -1}, -1, 1);
  try {
    build_aux_g(f, Interval(-1, 1), 0.0, -1.0);
    FAIL() << "expected ConstructionError";
  } catch (const ConstructionError& e) {
    EXPECT_GE(e.worst_point(), 0.0);
  }
}

TEST(LeftAlmostConvex, Examples) {
  const auto t = FunctionSpec::tan(Interval(-kThird, kThird));
  // Any interior d lowers the chord slope, so the chord binds at the left end.
  const auto inner = check_left_almost_convex(t, {0, kThird - 1e-6});
  EXPECT_FALSE(inner.satisfied);
  EXPECT_DOUBLE_EQ(inner.worst_point, -kThird);
  EXPECT_TRUE(check_left_almost_convex(t, {0, kThird, true}).satisfied);
  EXPECT_THROW(check_left_almost_convex(t, {0, kThird}), InputError);
  EXPECT_TRUE(check_left_almost_convex(poly({0, 0, 0, 1}, -1, 2), {0, 1}).satisfied);
  EXPECT_FALSE(check_left_almost_convex(poly({0, 0, -1}, -1, 1), {-0.5, 0.5}).satisfied);
}

TEST(LeftAlmostConvex, ReportsBindingCondition) {
  // Convex on [0, 2], but dips below the chord on the left.
  const Interval iv(-1, 2);
  const auto f = FunctionSpec::piecewise_linear({{-1, -3}, {0, 0}, {1, 1}, {2, 3}}, iv);
  const auto v = check_left_almost_convex(f, {0, 1});
  EXPECT_FALSE(v.satisfied);
  EXPECT_LT(v.worst_point, 0.0);
  EXPECT_NEAR(v.worst_margin, -2.0, 1e-12);
}

TEST(WeightAdmissible, Examples) {
  EXPECT_TRUE(check_weight_admissible(poly({1}, -1.0 / 3, 1), -1.0 / 3, 1, false).satisfied);
  const Interval iv(-0.25, 1);
  const auto step = FunctionSpec::piecewise_linear({{-0.25, 0}, {0, 0}, {0, 1}, {1, 1}}, iv);
  EXPECT_FALSE(check_weight_admissible(step, -0.25, 1, false).satisfied);
  const auto decreasing = poly({1, -0.5}, -0.25, 1);
  EXPECT_FALSE(check_weight_admissible(decreasing, -0.25, 1, false).satisfied);
}

TEST(WeightAdmissible, RelaxedHumpAroundPivot) {
  // a = -0.2, pivot -a = 0.2 with p(0.2) = 1; p rises then falls below 1 on the left and stays >= 1 on the right.
  const Interval iv(-0.2, 1);
  const auto p = FunctionSpec::piecewise_linear({{-0.2, 0.3}, {0.0, 0.9}, {0.1, 0.2}, {0.2, 1.0}, {0.6, 2.0}, {1.0, 1.2}}, iv);
  EXPECT_TRUE(check_weight_admissible(p, -0.2, 1, true).satisfied);
  EXPECT_FALSE(check_weight_admissible(p, -0.2, 1, false).satisfied);
  const auto q = FunctionSpec::piecewise_linear({{-0.2, 0.3}, {0.2, 1.0}, {0.6, 0.8}, {1.0, 1.2}}, iv);
  EXPECT_FALSE(check_weight_admissible(q, -0.2, 1, true).satisfied);
}
