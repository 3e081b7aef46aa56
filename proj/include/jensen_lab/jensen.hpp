#pragma once

// Hypothesis-checked verifiers for the Jensen-type inequalities.
//
// Each verifier evaluates every hypothesis of its statement, then computes
// both sides of the inequality whenever they are computable, and reports
//     gap = rhs - lhs,   rhs = normalized ∫ f dμ,   lhs = f(b_μ).
// A report with a failed hypothesis is `hypothesis_failed` whatever the gap.
// `violated` means all hypotheses held but the gap is negative beyond
// gap_tol; on valid input that signals a bug and callers should surface it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jensen_lab/error.hpp"
#include "jensen_lab/function_spec.hpp"
#include "jensen_lab/measure.hpp"
#include "jensen_lab/settings.hpp"
#include "jensen_lab/shape_check.hpp"
#include "jensen_lab/sp_certify.hpp"

namespace jlab {

enum class Theorem { thm1, cor1, cor2, cor3, thm3 };
enum class Verdict { holds, hypothesis_failed, violated };

inline const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::thm1: return "thm1";
    case Theorem::cor1: return "cor1";
    case Theorem::cor2: return "cor2";
    case Theorem::cor3: return "cor3";
    case Theorem::thm3: return "thm3";
  }
  return "?";
}

inline std::optional<Theorem> parse_theorem(const std::string& s) {
  for (Theorem t : {Theorem::thm1, Theorem::cor1, Theorem::cor2, Theorem::cor3, Theorem::thm3})
    if (s == theorem_name(t)) return t;
  return std::nullopt;
}

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::hypothesis_failed: return "hypothesis_failed";
    case Verdict::violated: return "violated";
  }
  return "?";
}

struct HypothesisCheck {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;  // >= 0 means satisfied
};

struct JensenReport {
  Theorem theorem = Theorem::thm1;
  std::vector<HypothesisCheck> hypotheses;
  double barycenter = std::numeric_limits<double>::quiet_NaN();
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::hypothesis_failed;
  std::vector<std::string> flags;

  bool all_hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const HypothesisCheck& h) { return h.satisfied; });
  }
  const HypothesisCheck* hypothesis(const std::string& name) const {
    for (const auto& h : hypotheses)
      if (h.name == name) return &h;
    return nullptr;
  }
};

struct Cor1Options {
  bool relaxed = false;
  /// When false the a >= -b/3 hypothesis is not checked (used to probe sharpness).
  bool check_range = true;
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline void add_margin(JensenReport& r, std::string name, double margin, double tol) {
  r.hypotheses.push_back({std::move(name), margin >= -tol, margin});
}

inline void add_shape(JensenReport& r, std::string name, const ShapeVerdict& v) {
  r.hypotheses.push_back({std::move(name), v.satisfied, v.worst_margin});
}

// sign = +1 expects gap >= 0, sign = -1 expects gap <= 0.
inline void finalize(JensenReport& r, double sign, const Settings& s) {
  if (!r.all_hypotheses_hold()) {
    r.verdict = Verdict::hypothesis_failed;
    return;
  }
  r.verdict = (sign * r.gap >= -s.gap_tol) ? Verdict::holds : Verdict::violated;
}

inline double sp_margin(const SPCertificate& c) {
  if (!(c.total_mass > 0)) return kNegInf;
  return std::min(c.worst_left.value, c.worst_right.value);
}

inline void set_sides(JensenReport& r, const FunctionSpec& f, std::optional<double> bary, double rhs) {
  r.rhs = rhs;
  if (bary) {
    r.barycenter = *bary;
    if (f.domain().contains(*bary)) r.lhs = f(*bary);
  }
  r.gap = r.rhs - r.lhs;
}

}  // namespace detail

/// Mixed-convex Jensen: f point-symmetric about c in [a, (a+b)/2], convex on
/// [c, b], and a unit-mass SP measure with barycenter in [2c - a, b]. [a, b] is
/// f's domain. concave_mode expects the reverse inequality for f concave on [c, b].
inline JensenReport verify_theorem1(const FunctionSpec& f, double c, const SignedMeasure& m, bool concave_mode,
                                    const Settings& s = {}) {
  const Interval& dom = f.domain();
  const double a = dom.lo();
  const double b = dom.hi();
  if (!dom.contains(m.interval())) throw PreconditionError("measure interval must lie inside the function domain");
  const MomentSummary mom = moments(m, s.quad);
  if (std::abs(mom.total_mass - 1.0) > 1e-9)
    throw PreconditionError("thm1 needs total mass 1, got " + std::to_string(mom.total_mass));

  JensenReport r;
  r.theorem = Theorem::thm1;
  const double c_margin = std::min(c - a, 0.5 * (a + b) - c);
  detail::add_margin(r, "c_in_range", c_margin, s.hyp_tol);
  if (c == 0.5 * (a + b)) r.flags.emplace_back("degenerate_window");
  if (concave_mode) r.flags.emplace_back("concave_mode");

  if (dom.contains(c) && c < b) {
    detail::add_shape(r, "point_symmetry", check_point_symmetry(f, c, dom, s));
    const FunctionSpec shaped = concave_mode ? FunctionSpec::scale(f, -1.0) : f;
    detail::add_shape(r, concave_mode ? "concave_on_right" : "convex_on_right",
                      check_convex_on(shaped, Interval(c, b), s));
  } else {
    detail::add_margin(r, "point_symmetry", detail::kNegInf, s.hyp_tol);
    detail::add_margin(r, concave_mode ? "concave_on_right" : "convex_on_right", detail::kNegInf, s.hyp_tol);
  }

  detail::add_margin(r, "sp_measure", detail::sp_margin(certify_sp(m, s)), s.cert_tol);

  const double bary = mom.barycenter.value_or(std::numeric_limits<double>::quiet_NaN());
  const double window = std::min(bary - (2.0 * c - a), b - bary);
  detail::add_margin(r, "barycenter_window", std::isnan(window) ? detail::kNegInf : window, s.hyp_tol);

  detail::set_sides(r, f, mom.barycenter, integrate(f, m, s.quad));
  detail::finalize(r, concave_mode ? -1.0 : 1.0, s);
  return r;
}

/// Weighted integral form: f odd on [-b, b] and convex on [0, b], weight p on
/// [a, b], a in [-b/3, b).
inline JensenReport verify_corollary1(const FunctionSpec& f, const FunctionSpec& p, double a, double b,
                                      const Cor1Options& opt = {}, const Settings& s = {}) {
  if (!(b > 0)) throw PreconditionError("cor1 needs b > 0");
  if (!(a < b)) throw PreconditionError("cor1 needs a < b");
  if (!f.domain().contains(Interval(-b, b))) throw PreconditionError("f must be defined on [-b, b]");
  if (!p.domain().contains(Interval(a, b))) throw PreconditionError("p must be defined on [a, b]");

  JensenReport r;
  r.theorem = Theorem::cor1;
  if (opt.check_range)
    detail::add_margin(r, "a_range", a + b / 3.0, s.hyp_tol);
  else
    r.flags.emplace_back("range_check_suppressed");
  if (opt.relaxed) r.flags.emplace_back("relaxed_weight");

  const Interval sym(-b, b);
  detail::add_shape(r, "odd_symmetry", check_point_symmetry(f, 0.0, sym, s));
  detail::add_shape(r, "convex_on_nonnegative", check_convex_on(f, Interval(0.0, b), s));
  if (opt.relaxed && !p.domain().contains(-a))
    detail::add_margin(r, "weight_admissible", detail::kNegInf, s.hyp_tol);
  else
    detail::add_shape(r, "weight_admissible", check_weight_admissible(p, a, b, opt.relaxed, s));

  const SignedMeasure mu = DensitySignedMeasure(Interval(a, b), p);
  const MomentSummary mom = moments(mu, s.quad);
  if (!(mom.total_mass > 0)) throw PreconditionError("weight integrates to a nonpositive mass over [a, b]");
  detail::set_sides(r, f, mom.barycenter, integrate(f, mu, s.quad) / mom.total_mass);
  detail::finalize(r, 1.0, s);
  return r;
}

/// Discrete form: nonnegative weights summing to 1 with Σ p_k a_k + min a_k >= 0.
inline JensenReport verify_corollary2(std::span<const double> points, std::span<const double> weights,
                                      const FunctionSpec& f, const Settings& s = {}) {
  if (points.empty() || points.size() != weights.size())
    throw PreconditionError("cor2 needs matching, nonempty points and weights");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0)) throw PreconditionError("cor2 weights must be nonnegative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12) throw PreconditionError("cor2 weights must sum to 1");

  const Interval& dom = f.domain();
  JensenReport r;
  r.theorem = Theorem::cor2;
  const double origin = std::min(-dom.lo(), dom.hi());
  detail::add_margin(r, "origin_in_domain", origin, s.hyp_tol);
  if (dom.contains(0.0)) {
    detail::add_shape(r, "odd_symmetry", check_point_symmetry(f, 0.0, dom, s));
    if (dom.hi() > 0)
      detail::add_shape(r, "convex_on_nonnegative", check_convex_on(f, Interval(0.0, dom.hi()), s));
  } else {
    detail::add_margin(r, "odd_symmetry", detail::kNegInf, s.hyp_tol);
  }

  double mean = 0.0;
  double rhs = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    mean += weights[k] * points[k];
    rhs += weights[k] * f(points[k]);
  }
  const double mn = *std::min_element(points.begin(), points.end());
  detail::add_margin(r, "mean_plus_min", mean + mn, s.hyp_tol);
  detail::set_sides(r, f, mean, rhs);
  detail::finalize(r, 1.0, s);
  return r;
}

/// Equal-weight form: Σ a_k + (n - 2) min a_k >= 0.
inline JensenReport verify_corollary3(std::span<const double> points, const FunctionSpec& f,
                                      const Settings& s = {}) {
  const std::size_t n = points.size();
  if (n < 2) throw PreconditionError("cor3 needs at least two points");
  const Interval& dom = f.domain();
  JensenReport r;
  r.theorem = Theorem::cor3;
  detail::add_margin(r, "origin_in_domain", std::min(-dom.lo(), dom.hi()), s.hyp_tol);
  if (dom.contains(0.0)) {
    detail::add_shape(r, "odd_symmetry", check_point_symmetry(f, 0.0, dom, s));
    if (dom.hi() > 0)
      detail::add_shape(r, "convex_on_nonnegative", check_convex_on(f, Interval(0.0, dom.hi()), s));
  } else {
    detail::add_margin(r, "odd_symmetry", detail::kNegInf, s.hyp_tol);
  }

  double sum = 0.0;
  double fsum = 0.0;
  for (double x : points) {
    sum += x;
    fsum += f(x);
  }
  const double mn = *std::min_element(points.begin(), points.end());
  detail::add_margin(r, "sum_plus_weighted_min", sum + static_cast<double>(n - 2) * mn, s.hyp_tol);
  const double inv_n = 1.0 / static_cast<double>(n);
  detail::set_sides(r, f, sum * inv_n, fsum * inv_n);
  detail::finalize(r, 1.0, s);
  return r;
}

/// ∫_a^d ((f(x) - f(c))(d - c) - (f(d) - f(c))(x - c)) dμ(x), with atoms at d included.
inline double thm3_condition_ii(const FunctionSpec& f, const SignedMeasure& m, double c, double d,
                                const QuadratureConfig& quad = {}) {
  if (!(c < d)) throw PreconditionError("condition ii needs c < d");
  const double fc = f(c);
  const double fd = f(d);
  const double len = d - c;
  const double rise = fd - fc;
  auto q = [&](double x) { return (f(x) - fc) * len - rise * (x - c); };
  const Interval& iv = m.interval();
  if (!m.is_discrete() && d > iv.lo() && !f.domain().contains(Interval(iv.lo(), std::min(d, iv.hi()))))
    throw DomainError("function domain does not cover [lo, d]", iv.lo());
  std::vector<double> kinks;
  if (d > iv.lo()) kinks = f.kinks(Interval(iv.lo(), d));
  return integrate_restricted(q, kinks, m, iv.lo(), d, quad);
}

/// Left almost convex Jensen for SP measures of any positive mass, normalized by μ([a, b]).
inline JensenReport verify_theorem3(const FunctionSpec& f, const SignedMeasure& m, const AlmostConvexWitness& w,
                                    const Settings& s = {}) {
  if (!f.domain().contains(m.interval()))
    throw PreconditionError("measure interval must lie inside the function domain");
  validate_witness(f, w);

  JensenReport r;
  r.theorem = Theorem::thm3;
  const SPCertificate cert = certify_sp(m, s);
  detail::add_margin(r, "sp_measure", detail::sp_margin(cert), s.cert_tol);
  detail::add_shape(r, "left_almost_convex", check_left_almost_convex(f, w, s));

  const MomentSummary mom = moments(m, s.quad);
  const double bary_margin = mom.barycenter ? *mom.barycenter - w.c : detail::kNegInf;
  detail::add_margin(r, "barycenter_ge_c", bary_margin, s.hyp_tol);
  detail::add_margin(r, "condition_ii", thm3_condition_ii(f, m, w.c, w.d, s.quad), s.hyp_tol);

  if (mom.total_mass > 0)
    detail::set_sides(r, f, mom.barycenter, integrate(f, m, s.quad) / mom.total_mass);
  detail::finalize(r, 1.0, s);
  return r;
}

}  // namespace jlab
