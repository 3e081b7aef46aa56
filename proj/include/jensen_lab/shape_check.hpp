#pragma once

// Grid-based verification of the structural hypotheses on f and p.
//
// Every check reports a signed margin (>= 0 means the property holds at that
// grid point) and the point where the margin is smallest. A verdict is
// satisfied iff its worst margin is >= -shape_tol.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "jensen_lab/error.hpp"
#include "jensen_lab/function_spec.hpp"
#include "jensen_lab/settings.hpp"

namespace jlab {

struct ShapeVerdict {
  bool satisfied = true;
  double worst_point = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  int grid_size = 0;
  std::vector<std::pair<double, double>> trace;  // (point, margin), only when requested
};

struct AlmostConvexWitness {
  double c;
  double d;
  /// Accept d equal to the right end of the domain (the interior requirement is otherwise strict).
  bool allow_d_at_hi = false;
};

namespace detail {

class MarginTracker {
 public:
  MarginTracker(int grid, bool keep_trace) : keep_trace_(keep_trace) { v_.grid_size = grid; }

  void record(double point, double margin) {
    if (margin < v_.worst_margin) {
      v_.worst_margin = margin;
      v_.worst_point = point;
    }
    if (keep_trace_) v_.trace.emplace_back(point, margin);
  }

  ShapeVerdict finish(double tol) {
    if (v_.worst_margin == std::numeric_limits<double>::infinity()) v_.worst_margin = 0.0;
    v_.satisfied = v_.worst_margin >= -tol;
    return std::move(v_);
  }

 private:
  ShapeVerdict v_;
  bool keep_trace_;
};

inline void require_within(const FunctionSpec& f, const Interval& iv) {
  if (!f.domain().contains(iv)) {
    const double bad = f.domain().contains(iv.lo()) ? iv.hi() : iv.lo();
    throw DomainError("check interval exceeds the function domain at x = " + std::to_string(bad), bad);
  }
}

inline std::vector<double> uniform_grid(const Interval& iv, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = (i + 1 == n) ? iv.hi() : iv.lo() + iv.length() * i / (n - 1.0);
  return xs;
}

// Exact convexity of a polyline restricted to iv: slopes must not decrease and
// interior jumps are never convex.
inline ShapeVerdict polyline_convexity(const std::vector<Point2>& knots, const FunctionSpec& f,
                                       const Interval& iv, double tol, bool keep_trace) {
  std::vector<Point2> pts;
  pts.push_back({iv.lo(), f(iv.lo())});
  for (const Point2& k : knots)
    if (iv.interior(k.x)) pts.push_back(k);
  pts.push_back({iv.hi(), f(iv.hi())});

  MarginTracker tr(static_cast<int>(pts.size()), keep_trace);
  double prev_slope = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point2& l = pts[i];
    const Point2& r = pts[i + 1];
    if (l.x == r.x) {
      tr.record(l.x, -std::abs(r.y - l.y));
      prev_slope = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double slope = (r.y - l.y) / (r.x - l.x);
    if (!std::isnan(prev_slope)) tr.record(l.x, slope - prev_slope);
    prev_slope = slope;
  }
  return tr.finish(tol);
}

}  // namespace detail

/// Convexity of f on `iv`: second differences on a uniform grid, or exact slope
/// monotonicity for piecewise_linear and grid_samples functions.
inline ShapeVerdict check_convex_on(const FunctionSpec& f, const Interval& iv, const Settings& s = {},
                                    bool keep_trace = false) {
  if (s.grid < 3) throw InputError("convexity grid must be >= 3");
  detail::require_within(f, iv);

  if (f.family() == Family::piecewise_linear) {
    const auto& knots = std::get<fam::PiecewiseLinear>(f.node().payload).knots;
    return detail::polyline_convexity(knots, f, iv, s.shape_tol, keep_trace);
  }
  if (f.family() == Family::grid_samples) {
    const auto& samples = std::get<fam::GridSamples>(f.node().payload).samples;
    std::vector<Point2> knots;
    const Interval& d = f.domain();
    for (std::size_t i = 0; i < samples.size(); ++i)
      knots.push_back({d.lo() + d.length() * static_cast<double>(i) / static_cast<double>(samples.size() - 1),
                       samples[i]});
    return detail::polyline_convexity(knots, f, iv, s.shape_tol, keep_trace);
  }

  const std::vector<double> xs = detail::uniform_grid(iv, s.grid);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  detail::MarginTracker tr(s.grid, keep_trace);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) tr.record(xs[i], ys[i - 1] - 2.0 * ys[i] + ys[i + 1]);
  return tr.finish(s.shape_tol);
}

/// f(c - x) + f(c + x) = 2 f(c) for every grid offset x with c ± x in iv.
inline ShapeVerdict check_point_symmetry(const FunctionSpec& f, double c, const Interval& iv,
                                         const Settings& s = {}, bool keep_trace = false) {
  if (!iv.contains(c)) throw InputError("symmetry center must lie in the check interval");
  if (s.grid < 2) throw InputError("symmetry grid must be >= 2");
  detail::require_within(f, iv);
  const double reach = std::min(c - iv.lo(), iv.hi() - c);
  const double fc = f(c);
  detail::MarginTracker tr(s.grid, keep_trace);
  for (int k = 0; k < s.grid; ++k) {
    const double x = (k + 1 == s.grid) ? reach : reach * k / (s.grid - 1.0);
    const double lo = std::max(c - x, iv.lo());
    const double hi = std::min(c + x, iv.hi());
    tr.record(c + x, -std::abs(f(lo) + f(hi) - 2.0 * fc));
    if (reach == 0.0) break;
  }
  return tr.finish(s.shape_tol);
}

/// The affine function through (c, f(c)) and (d, f(d)), on f's domain.
inline FunctionSpec chord(const FunctionSpec& f, double c, double d) {
  if (!(c < d)) throw InputError("chord requires c < d");
  return FunctionSpec::chord({c, f(c)}, {d, f(d)}, f.domain());
}

/// The convexification g: the chord through (chord_from, f(chord_from)) and
/// (split, f(split)) on [lo, split], f on [split, hi]. Throws ConstructionError
/// if the result is not convex on `interval`.
inline FunctionSpec build_aux_g(const FunctionSpec& f, const Interval& interval, double split,
                                double chord_from, const Settings& s = {}) {
  detail::require_within(f, interval);
  if (!interval.contains(split)) throw InputError("split must lie in the interval");
  FunctionSpec g = f;
  if (split > interval.lo()) {
    if (!(interval.lo() <= chord_from && chord_from < split))
      throw InputError("chord anchor must lie in [lo, split)");
    const FunctionSpec h = FunctionSpec::chord({chord_from, f(chord_from)}, {split, f(split)}, interval);
    g = FunctionSpec::glue(h, f, split, interval);
  }
  const ShapeVerdict v = check_convex_on(g, interval, s);
  if (!v.satisfied)
    throw ConstructionError("convexification is not convex; worst second difference " +
                                std::to_string(v.worst_margin) + " at x = " + std::to_string(v.worst_point),
                            v.worst_point);
  return g;
}

inline void validate_witness(const FunctionSpec& f, const AlmostConvexWitness& w) {
  const Interval& d = f.domain();
  if (!(w.c < w.d)) throw InputError("almost-convex witness requires c < d");
  if (!d.interior(w.c)) throw InputError("witness c must be interior to the domain");
  const bool d_ok = d.interior(w.d) || (w.allow_d_at_hi && w.d == d.hi());
  if (!d_ok) throw InputError("witness d must be interior to the domain (or equal to hi when allowed)");
}

/// Left almost convexity: f convex on [c, hi] and f >= chord(c, d) on [lo, c].
inline ShapeVerdict check_left_almost_convex(const FunctionSpec& f, const AlmostConvexWitness& w,
                                             const Settings& s = {}) {
  validate_witness(f, w);
  const Interval& dom = f.domain();
  const ShapeVerdict conv = check_convex_on(f, Interval(w.c, dom.hi()), s);

  const FunctionSpec h = chord(f, w.c, w.d);
  const Interval left(dom.lo(), w.c);
  detail::MarginTracker tr(s.grid, false);
  for (double x : detail::uniform_grid(left, s.grid)) tr.record(x, f(x) - h(x));
  const ShapeVerdict dom_check = tr.finish(s.shape_tol);

  // Report whichever condition binds.
  ShapeVerdict out;
  out.grid_size = s.grid;
  const bool conv_binds = !conv.satisfied || (dom_check.satisfied && conv.worst_margin <= dom_check.worst_margin);
  const ShapeVerdict& b = conv_binds ? conv : dom_check;
  out.worst_point = b.worst_point;
  out.worst_margin = b.worst_margin;
  out.satisfied = conv.satisfied && dom_check.satisfied;
  return out;
}

/// Admissibility of a weight p on [a, b].
///
/// Strict: p >= 0, nondecreasing, and not vanishing on (-b/3, b]; a positive
/// value below shape_tol counts as vanishing. Relaxed: p >= 0 and
/// p(x) <= p(-a) <= p(y) for grid points x <= -a <= y.
inline ShapeVerdict check_weight_admissible(const FunctionSpec& p, double a, double b, bool relaxed,
                                            const Settings& s = {}, bool keep_trace = false) {
  if (!(b > 0)) throw InputError("weight check requires b > 0");
  const Interval iv(a, b);
  detail::require_within(p, iv);

  std::vector<double> xs = detail::uniform_grid(iv, s.grid);
  for (double k : p.kinks(iv)) xs.push_back(k);
  if (relaxed && iv.contains(-a)) xs.push_back(-a);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  detail::MarginTracker tr(static_cast<int>(xs.size()), keep_trace);
  if (!relaxed) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double x : xs) {
      const double v = p(x);
      double m = v;
      if (!std::isnan(prev)) m = std::min(m, v - prev);
      if (x > -b / 3.0) m = std::min(m, v - 2.0 * s.shape_tol);
      tr.record(x, m);
      prev = v;
    }
  } else {
    if (!p.domain().contains(-a)) throw DomainError("relaxed weight check needs p(-a)", -a);
    const double pivot = p(-a);
    for (double x : xs) {
      const double v = p(x);
      const double order = x <= -a ? pivot - v : v - pivot;
      tr.record(x, std::min(v, order));
    }
  }
  return tr.finish(s.shape_tol);
}

}  // namespace jlab
