#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "jensen_lab/quadrature.hpp"
#include "oracles.hpp"

using namespace jlab;

TEST(GaussLegendre, WeightsSumToTwoAndNodesSymmetric) {
  for (int n : {1, 2, 5, 8, 16}) {
    const GaussRule r = gauss_legendre(n);
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    EXPECT_NEAR(sum, 2.0, 1e-14) << n;
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.nodes[i], -r.nodes[n - 1 - i], 1e-15);
  }
}

TEST(Quadrature, SquareOnUnitInterval) {
  const auto r = integrate_panelized([](double x) { return x * x; }, Interval(0, 1));
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-12);
  EXPECT_GE(r.error_estimate, 0.0);
}

TEST(Quadrature, ShiftedSquare) {
  const auto r = integrate_panelized([](double x) { return x * x - 1.0 / 6.0; }, Interval(-1, 1));
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-12);
}

TEST(Quadrature, TanAgainstLogCos) {
  const auto r = integrate_panelized([](double x) { return std::tan(x); }, Interval(0, 0.9));
  EXPECT_NEAR(r.value, oracle::kTanIntegral09, 1e-12);
  EXPECT_NEAR(r.value, -std::log(std::cos(0.9)), 1e-12);
}

TEST(Quadrature, ExactForDegreeUpTo15) {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> coef(-10, 10), end(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(16);
    for (double& v : c) v = coef(eng);
    double a = end(eng), b = end(eng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) continue;
    auto p = [&](double x) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
    auto antiderivative = [&](double x) {
      double acc = 0.0;
      for (int k = 15; k >= 0; --k) acc = acc * x + c[k] / (k + 1);
      return acc * x;
    };
    const double exact = antiderivative(b) - antiderivative(a);
    QuadratureConfig one_panel;
    one_panel.panels_per_segment = 1;
    one_panel.refine_limit = 1;
    one_panel.abs_tol = 1.0;
    const auto r = integrate_panelized(p, Interval(a, b), one_panel);
    EXPECT_NEAR(r.value, exact, 1e-12 * std::max(1.0, std::abs(exact))) << trial;
  }
}

TEST(Quadrature, BreakpointsKeepKinksOffPanels) {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const std::vector<double> bp{0.3};
  QuadratureConfig cfg;
  cfg.panels_per_segment = 1;
  cfg.refine_limit = 1;
  const auto r = integrate_panelized(f, Interval(0, 1), bp, cfg);
  EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-15);
  EXPECT_LE(r.error_estimate, 1e-15);
}

TEST(Quadrature, Additivity) {
  auto f = [](double x) { return std::exp(x) * std::sin(3 * x); };
  const auto left = integrate_panelized(f, Interval(-1, 0.4));
  const auto right = integrate_panelized(f, Interval(0.4, 2));
  const std::vector<double> bp{0.4};
  const auto whole = integrate_panelized(f, Interval(-1, 2), bp);
  EXPECT_NEAR(left.value + right.value, whole.value,
              left.error_estimate + right.error_estimate + whole.error_estimate + 1e-14);
}

TEST(Quadrature, Deterministic) {
  auto f = [](double x) { return std::cos(x * x); };
  const auto a = integrate_panelized(f, Interval(0, 3));
  const auto b = integrate_panelized(f, Interval(0, 3));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.panels_used, b.panels_used);
}

TEST(Quadrature, NonConvergenceCarriesBestValue) {
  QuadratureConfig cfg;
  cfg.refine_limit = 1;
  cfg.panels_per_segment = 1;
  cfg.abs_tol = 1e-15;
  try {
    integrate_panelized([](double x) { return std::sqrt(x); }, Interval(0, 1), cfg);
    FAIL() << "expected NonConvergenceError";
  } catch (const NonConvergenceError& e) {
    EXPECT_NEAR(e.best_value(), 2.0 / 3.0, 1e-3);
    EXPECT_GT(e.error_estimate(), 1e-15);
  }
}

TEST(Quadrature, NonFiniteIntegrandIsDomainError) {
  EXPECT_THROW(integrate_panelized([](double x) { return x < 0.5 ? 1.0 : NAN; }, Interval(0, 1)), DomainError);
}

TEST(Quadrature, ConfigValidation) {
  QuadratureConfig cfg;
  cfg.abs_tol = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.refine_limit = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}
