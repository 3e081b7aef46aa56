#pragma once

// Composite fixed-order Gauss-Legendre quadrature with panel doubling.
//
// The integration interval is cut into segments at the supplied breakpoints;
// each segment is split into equal panels and every panel gets the same
// n-point Gauss rule. Panels never straddle a breakpoint and Gauss nodes are
// interior, so the integrand is never evaluated exactly at a breakpoint.

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "jensen_lab/error.hpp"
#include "jensen_lab/interval.hpp"

namespace jlab {

struct QuadratureConfig {
  int panels_per_segment = 16;
  int nodes_per_panel = 8;
  int refine_limit = 12;
  double abs_tol = 1e-9;

  void validate() const {
    if (panels_per_segment < 1) throw InputError("panels_per_segment must be >= 1");
    if (nodes_per_panel < 1) throw InputError("nodes_per_panel must be >= 1");
    if (refine_limit < 1) throw InputError("refine_limit must be >= 1");
    if (!(abs_tol > 0)) throw InputError("abs_tol must be > 0");
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long panels_used = 0;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule via Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  if (n == 1) return {{0.0}, {2.0}};
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  return rule;
}

namespace detail {

template <class F>
double composite_gauss(const F& f, std::span<const double> cuts, long panels, const GaussRule& rule) {
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const double h = (b - a) / static_cast<double>(panels);
    for (long p = 0; p < panels; ++p) {
      const double pa = a + h * static_cast<double>(p);
      const double pb = (p + 1 == panels) ? b : a + h * static_cast<double>(p + 1);
      const double mid = 0.5 * (pa + pb);
      const double rad = 0.5 * (pb - pa);
      double acc = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double x = mid + rad * rule.nodes[k];
        const double y = f(x);
        if (!std::isfinite(y))
          throw DomainError("integrand is not finite at x = " + std::to_string(x), x);
        acc += rule.weights[k] * y;
      }
      total += rad * acc;
    }
  }
  return total;
}

}  // namespace detail

/// Integrate f over `interval`, never letting a panel straddle one of `breakpoints`.
///
/// Breakpoints outside the open interval are ignored. The error estimate is
/// |Q(n) - Q(2n)|; panel counts double until it drops to cfg.abs_tol, and the
/// finer value is returned. Exhausting cfg.refine_limit doublings throws
/// NonConvergenceError carrying the best value.
template <class F>
QuadratureResult integrate_panelized(const F& f, const Interval& interval,
                                     std::span<const double> breakpoints,
                                     const QuadratureConfig& cfg = {}) {
  cfg.validate();
  std::vector<double> cuts;
  cuts.reserve(breakpoints.size() + 2);
  cuts.push_back(interval.lo());
  for (double t : breakpoints)
    if (interval.interior(t) && t > cuts.back()) cuts.push_back(t);
  cuts.push_back(interval.hi());

  const GaussRule rule = gauss_legendre(cfg.nodes_per_panel);
  const long segments = static_cast<long>(cuts.size() - 1);
  long panels = cfg.panels_per_segment;
  double coarse = detail::composite_gauss(f, cuts, panels, rule);
  double err = 0.0;
  for (int level = 0; level < cfg.refine_limit; ++level) {
    panels *= 2;
    const double fine = detail::composite_gauss(f, cuts, panels, rule);
    err = std::abs(fine - coarse);
    if (err <= cfg.abs_tol) return {fine, err, panels * segments};
    coarse = fine;
  }
  throw NonConvergenceError("quadrature did not reach abs_tol " + std::to_string(cfg.abs_tol) +
                                " (estimate " + std::to_string(err) + ")",
                            coarse, err);
}

template <class F>
QuadratureResult integrate_panelized(const F& f, const Interval& interval, const QuadratureConfig& cfg = {}) {
  return integrate_panelized(f, interval, std::span<const double>{}, cfg);
}

}  // namespace jlab
