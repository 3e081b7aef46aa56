#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jensen_lab/function_spec.hpp"

using namespace jlab;

TEST(Interval, RejectsDegenerateAndNonFinite) {
  EXPECT_THROW(Interval(1.0, 1.0), InputError);
  EXPECT_THROW(Interval(2.0, 1.0), InputError);
  EXPECT_THROW(Interval(0.0, INFINITY), InputError);
  EXPECT_THROW(Interval(NAN, 1.0), InputError);
  const Interval iv(-1.0, 3.0);
  EXPECT_DOUBLE_EQ(iv.length(), 4.0);
  EXPECT_DOUBLE_EQ(iv.midpoint(), 1.0);
  EXPECT_TRUE(iv.contains(-1.0));
  EXPECT_FALSE(iv.interior(-1.0));
  EXPECT_TRUE(iv.contains(Interval(0.0, 3.0)));
}

TEST(FunctionSpec, PolynomialHorner) {
  const auto f = FunctionSpec::polynomial({1.0, -2.0, 3.0}, Interval(-2, 2));
  EXPECT_DOUBLE_EQ(f(2.0), 1.0 - 4.0 + 12.0);
  EXPECT_EQ(f.family(), Family::polynomial);
  EXPECT_THROW(FunctionSpec::polynomial({}, Interval(0, 1)), InputError);
}

TEST(FunctionSpec, EvaluationOutsideDomainNamesThePoint) {
  const auto f = FunctionSpec::polynomial({0, 1}, Interval(0, 1));
  try {
    f(1.5);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_DOUBLE_EQ(e.point(), 1.5);
  }
}

TEST(FunctionSpec, TanPoleGuard) {
  EXPECT_NO_THROW(FunctionSpec::tan(Interval(-1.5, 1.5)));
  EXPECT_THROW(FunctionSpec::tan(Interval(-2, 2)), InputError);
  EXPECT_THROW(FunctionSpec::tan(Interval(0, std::numbers::pi / 2 - 1e-7)), InputError);
  EXPECT_THROW(FunctionSpec::tan(Interval(2.0, 5.0)), InputError);  // 3π/2 inside
  EXPECT_NO_THROW(FunctionSpec::tan(Interval(1.6, 4.7)));
}

TEST(FunctionSpec, OddPowerIsOdd) {
  const auto f = FunctionSpec::odd_power(2.5, Interval(-2, 2));
  for (double x : {0.1, 0.7, 1.9}) EXPECT_DOUBLE_EQ(f(-x), -f(x));
  EXPECT_DOUBLE_EQ(f(0.0), 0.0);
  EXPECT_THROW(FunctionSpec::odd_power(0.0, Interval(-1, 1)), InputError);
}

TEST(FunctionSpec, PiecewiseLinearJumpIsRightContinuous) {
  const auto f = FunctionSpec::piecewise_linear({{0, 0}, {1, 1}, {1, 3}, {2, 3}}, Interval(0, 2));
  EXPECT_DOUBLE_EQ(f(0.5), 0.5);
  EXPECT_DOUBLE_EQ(f(1.0), 3.0);
  EXPECT_DOUBLE_EQ(f(std::nextafter(1.0, 0.0)), std::nextafter(1.0, 0.0));
  EXPECT_THROW(FunctionSpec::piecewise_linear({{0, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 0}}, Interval(0, 2)), InputError);
  EXPECT_THROW(FunctionSpec::piecewise_linear({{0, 0}, {2, 1}, {1, 2}}, Interval(0, 2)), InputError);
  EXPECT_THROW(FunctionSpec::piecewise_linear({{0.5, 0}, {2, 1}}, Interval(0, 2)), InputError);
}

TEST(FunctionSpec, GridSamplesInterpolate) {
  const auto f = FunctionSpec::grid_samples({0.0, 1.0, 4.0}, Interval(0, 2));
  EXPECT_DOUBLE_EQ(f(0.5), 0.5);
  EXPECT_DOUBLE_EQ(f(1.5), 2.5);
  EXPECT_DOUBLE_EQ(f(2.0), 4.0);
  EXPECT_EQ(f.kinks(Interval(0, 2)), std::vector<double>{1.0});
}

TEST(FunctionSpec, OddExtensionSubtractsBaseAtZero) {
  const auto base = FunctionSpec::polynomial({2.0, 0.0, 1.0}, Interval(0, 3));  // 2 + x²
  const auto f = FunctionSpec::odd_extension(base, Interval(-3, 2));
  EXPECT_DOUBLE_EQ(f(1.5), 2.25);
  EXPECT_DOUBLE_EQ(f(-3.0), -9.0);
  EXPECT_DOUBLE_EQ(f(0.0), 0.0);
  EXPECT_THROW(FunctionSpec::odd_extension(base, Interval(-4, 1)), InputError);
}

TEST(FunctionSpec, PointSymmetricExtension) {
  const auto base = FunctionSpec::polynomial({0, 0, 1}, Interval(0.5, 3));  // x² right of c = 0.5
  const auto f = FunctionSpec::point_symmetric_extension(base, 0.5, Interval(-1, 2));
  for (double x : {0.1, 0.9, 1.5})
    EXPECT_NEAR(f(0.5 - x) + f(0.5 + x), 2 * f(0.5), 1e-14);
  EXPECT_DOUBLE_EQ(f(1.0), 1.0);
  // base must reach max(hi, 2c - lo) = 2
  const auto short_base = FunctionSpec::polynomial({0, 0, 1}, Interval(0.5, 1.5));
  EXPECT_THROW(FunctionSpec::point_symmetric_extension(short_base, 0.5, Interval(-1, 1.5)), InputError);
}

TEST(FunctionSpec, ChordThroughTwoPoints) {
  const auto h = FunctionSpec::chord({0, 1}, {2, 5}, Interval(-1, 3));
  EXPECT_DOUBLE_EQ(h(0), 1);
  EXPECT_DOUBLE_EQ(h(2), 5);
  EXPECT_DOUBLE_EQ(h(-1), -1);
  EXPECT_THROW(FunctionSpec::chord({1, 0}, {1, 2}, Interval(0, 2)), InputError);
}

TEST(FunctionSpec, GlueRequiresContinuity) {
  const Interval dom(-1, 2);
  const auto left = FunctionSpec::chord({-1, -1}, {1, 1}, dom);
  const auto cube = FunctionSpec::polynomial({0, 0, 0, 1}, dom);
  const auto g = FunctionSpec::glue(left, cube, 1.0, dom);
  EXPECT_DOUBLE_EQ(g(0.5), 0.5);
  EXPECT_DOUBLE_EQ(g(1.5), 3.375);
  EXPECT_EQ(g.kinks(dom), std::vector<double>{1.0});
  EXPECT_THROW(FunctionSpec::glue(left, cube, 0.5, dom), InputError);
}

TEST(FunctionSpec, ReflectAndScale) {
  const auto cube = FunctionSpec::polynomial({0, 0, 0, 1}, Interval(-1, 2));
  const auto r = FunctionSpec::reflect(cube);
  EXPECT_EQ(r.domain(), Interval(-2, 1));
  EXPECT_DOUBLE_EQ(r(-2.0), 8.0);
  const auto s = FunctionSpec::scale(cube, -2.0);
  EXPECT_DOUBLE_EQ(s(1.0), -2.0);
}

TEST(FunctionSpec, CallableCarriesKinks) {
  const auto f = FunctionSpec::callable([](double x) { return std::abs(x - 0.25); }, Interval(0, 1), {0.25}, "abs");
  EXPECT_DOUBLE_EQ(f(1.0), 0.75);
  EXPECT_EQ(f.kinks(Interval(0, 1)), std::vector<double>{0.25});
  const auto bad = FunctionSpec::callable([](double x) { return 1.0 / x; }, Interval(0, 1));
  EXPECT_THROW(bad(0.0), DomainError);
}

TEST(FunctionSpec, KinksAreInteriorSortedUnique) {
  const auto base = FunctionSpec::piecewise_linear({{0, 0}, {0.5, 0}, {1, 1}, {2, 3}}, Interval(0, 2));
  const auto f = FunctionSpec::odd_extension(base, Interval(-2, 2));
  EXPECT_EQ(f.kinks(Interval(-2, 2)), (std::vector<double>{-1, -0.5, 0, 0.5, 1}));
  EXPECT_EQ(f.kinks(Interval(0, 2)), (std::vector<double>{0.5, 1}));
}
