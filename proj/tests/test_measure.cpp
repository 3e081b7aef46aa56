#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jensen_lab/measure.hpp"

using namespace jlab;

namespace {

SignedMeasure five_ninths() {
  return DiscreteSignedMeasure({{0.25, 5.0 / 9}, {0.5, -1.0 / 9}, {0.75, 5.0 / 9}}, Interval(0, 1));
}

DensitySignedMeasure quadratic_density(double lo, double hi) {
  const Interval iv(lo, hi);
  return DensitySignedMeasure(iv, FunctionSpec::polynomial({-1.0 / 6, 0, 1}, iv));
}

}  // namespace

TEST(DiscreteMeasure, ValidatesAndMerges) {
  EXPECT_THROW(DiscreteSignedMeasure({}, Interval(0, 1)), InputError);
  EXPECT_THROW(DiscreteSignedMeasure({{1.5, 1.0}}, Interval(0, 1)), InputError);
  EXPECT_THROW(DiscreteSignedMeasure({{0.5, 0.0}}, Interval(0, 1)), InputError);
  EXPECT_THROW(DiscreteSignedMeasure({{0.5, NAN}}, Interval(0, 1)), InputError);
  const DiscreteSignedMeasure m({{0.7, 1.0}, {0.2, 0.5}, {0.7, -0.25}}, Interval(0, 1));
  ASSERT_EQ(m.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(m.atoms()[0].position, 0.2);
  EXPECT_DOUBLE_EQ(m.atoms()[1].weight, 0.75);
}

TEST(DiscreteMeasure, MergingPreservesMassAndIntegrals) {
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> pos(0, 1), w(-1, 2);
  const auto f = FunctionSpec::polynomial({0.3, -1, 2, 0.5}, Interval(0, 1));
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 6; ++i) atoms.push_back({std::round(pos(eng) * 4) / 4, w(eng)});
    double mass = 0.0, integral = 0.0;
    for (const Atom& a : atoms) {
      mass += a.weight;
      integral += a.weight * f(a.position);
    }
    if (std::abs(mass) < 1e-3) continue;
    const SignedMeasure m = DiscreteSignedMeasure(atoms, Interval(0, 1));
    EXPECT_NEAR(total_mass(m), mass, 1e-12);
    EXPECT_NEAR(integrate(f, m), integral, 1e-12);
  }
}

TEST(DensityMeasure, Validation) {
  const Interval iv(0, 1);
  const auto rho = FunctionSpec::polynomial({1}, Interval(0, 0.5));
  EXPECT_THROW(DensitySignedMeasure(iv, rho), InputError);
  const auto one = FunctionSpec::polynomial({1}, iv);
  EXPECT_THROW(DensitySignedMeasure(iv, one, {0.0}), InputError);
  EXPECT_THROW(DensitySignedMeasure(iv, one, {0.6, 0.4}), InputError);
  EXPECT_NO_THROW(DensitySignedMeasure(iv, one, {0.4, 0.6}));
}

TEST(TotalMass, Examples) {
  EXPECT_DOUBLE_EQ(total_mass(DiscreteSignedMeasure({{1.0, 1.0}}, Interval(0, 1))), 1.0);
  EXPECT_NEAR(total_mass(five_ninths()), 1.0, 1e-15);
  EXPECT_NEAR(total_mass(quadratic_density(-1, 1)), 1.0 / 3.0, 1e-12);
}

TEST(Integrate, ThreeAtomUnitMassMoments) {
  const SignedMeasure m = five_ninths();
  const Interval iv(0, 1);
  EXPECT_NEAR(integrate(FunctionSpec::polynomial({1}, iv), m), total_mass(m), 1e-15);
  EXPECT_NEAR(integrate(FunctionSpec::polynomial({0, 1}, iv), m), 0.5, 1e-15);
  EXPECT_NEAR(integrate(FunctionSpec::polynomial({0, 0, 1}, iv), m), 23.0 / 72.0, 1e-15);
}

TEST(Integrate, DomainMustCoverDensityInterval) {
  const SignedMeasure m = quadratic_density(-1, 1);
  try {
    integrate(FunctionSpec::polynomial({1}, Interval(-1, 0.5)), m);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_DOUBLE_EQ(e.point(), 1.0);
  }
}

TEST(Integrate, Linearity) {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  const SignedMeasure m = quadratic_density(-1, 2);
  const Interval iv(-1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = u(eng), beta = u(eng);
    const auto f = FunctionSpec::polynomial({u(eng), u(eng), u(eng)}, iv);
    const auto g = FunctionSpec::piecewise_linear({{-1, u(eng)}, {0.3, u(eng)}, {2, u(eng)}}, iv);
    const auto combo = FunctionSpec::callable([&](double x) { return alpha * f(x) + beta * g(x); }, iv, {0.3});
    EXPECT_NEAR(integrate(combo, m), alpha * integrate(f, m) + beta * integrate(g, m), 1e-9);
  }
}

TEST(Moments, PointMassAndDensities) {
  const auto point = moments(DiscreteSignedMeasure({{0.8, 1.0}}, Interval(0, 1)));
  ASSERT_TRUE(point.barycenter);
  EXPECT_DOUBLE_EQ(*point.barycenter, 0.8);

  const auto sym = moments(quadratic_density(-1, 1));
  ASSERT_TRUE(sym.barycenter);
  EXPECT_NEAR(*sym.barycenter, 0.0, 1e-12);

  const auto wide = moments(quadratic_density(-1, 2));
  EXPECT_NEAR(wide.total_mass, 2.5, 1e-12);
  EXPECT_NEAR(wide.first_moment, 3.5, 1e-12);
  EXPECT_NEAR(*wide.barycenter, 1.4, 1e-12);
}

TEST(Moments, NonpositiveMassLeavesBarycenterUndefined) {
  const auto m = moments(DiscreteSignedMeasure({{0.0, -1.0}, {1.0, 0.5}}, Interval(0, 1)));
  EXPECT_FALSE(m.barycenter.has_value());
  EXPECT_DOUBLE_EQ(m.total_mass, -0.5);
}

TEST(ProductMoments, SeparableFixture) {
  // Total mass is 5/2 · 2 = 5 by iterated integration.
  const auto pm = iterated_product_moments(quadratic_density(-1, 2), Interval(-1, 1));
  EXPECT_NEAR(pm.mass, 5.0, 1e-9);
  ASSERT_TRUE(pm.barycenter_x && pm.barycenter_y);
  EXPECT_NEAR(*pm.barycenter_x, 1.4, 1e-9);
  EXPECT_NEAR(*pm.barycenter_y, 0.0, 1e-9);

  const auto sym = iterated_product_moments(quadratic_density(-1, 1), Interval(-1, 1));
  EXPECT_NEAR(*sym.barycenter_x, 0.0, 1e-12);
  EXPECT_NEAR(*sym.barycenter_y, 0.0, 1e-12);
}

TEST(DensityMass, PanelDoublingWithinEstimate) {
  const Interval iv(0, 1.2);
  const DensitySignedMeasure d(iv, FunctionSpec::tan(iv));
  QuadratureConfig coarse;
  coarse.panels_per_segment = 2;
  const auto r = integrate_panelized(d.density(), iv, coarse);
  QuadratureConfig fine = coarse;
  fine.panels_per_segment = 4;
  const auto r2 = integrate_panelized(d.density(), iv, fine);
  EXPECT_LE(std::abs(r.value - r2.value), r.error_estimate + 1e-12);
}
