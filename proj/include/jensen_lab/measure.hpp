#pragma once

// Signed measures on compact intervals: finite atom lists and densities.
//
// Discrete sums always run in ascending atom position so that results are
// reproducible bit for bit. Density integrals go through integrate_panelized
// with panels cut at the kinks of both the integrand and the density.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "jensen_lab/error.hpp"
#include "jensen_lab/function_spec.hpp"
#include "jensen_lab/interval.hpp"
#include "jensen_lab/quadrature.hpp"

namespace jlab {

struct Atom {
  double position;
  double weight;
};

class DiscreteSignedMeasure {
 public:
  /// Sorts atoms by position and merges coincident positions by summing weights.
  DiscreteSignedMeasure(std::vector<Atom> atoms, Interval support) : support_(support) {
    if (atoms.empty()) throw InputError("discrete measure needs at least one atom");
    for (const Atom& a : atoms) {
      if (!std::isfinite(a.position) || !std::isfinite(a.weight))
        throw InputError("atom position and weight must be finite");
      if (!support.contains(a.position))
        throw InputError("atom at " + std::to_string(a.position) + " lies outside the support interval");
    }
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom& l, const Atom& r) { return l.position < r.position; });
    for (const Atom& a : atoms) {
      if (!atoms_.empty() && atoms_.back().position == a.position)
        atoms_.back().weight += a.weight;
      else
        atoms_.push_back(a);
    }
    if (std::none_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.weight != 0.0; }))
      throw InputError("discrete measure needs at least one nonzero weight");
  }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const Interval& support() const noexcept { return support_; }

 private:
  std::vector<Atom> atoms_;
  Interval support_;
};

class DensitySignedMeasure {
 public:
  DensitySignedMeasure(Interval interval, FunctionSpec density, std::vector<double> breakpoints = {})
      : interval_(interval), density_(std::move(density)), breakpoints_(std::move(breakpoints)) {
    if (!density_.domain().contains(interval_))
      throw InputError("density domain does not contain the measure interval");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (!interval_.interior(breakpoints_[i]))
        throw InputError("density breakpoint " + std::to_string(breakpoints_[i]) + " is not interior");
      if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
        throw InputError("density breakpoints must be strictly increasing");
    }
  }

  const Interval& interval() const noexcept { return interval_; }
  const FunctionSpec& density() const noexcept { return density_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  /// Declared breakpoints merged with the density's own kinks.
  std::vector<double> all_breakpoints() const {
    std::vector<double> out = density_.kinks(interval_);
    out.insert(out.end(), breakpoints_.begin(), breakpoints_.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  Interval interval_;
  FunctionSpec density_;
  std::vector<double> breakpoints_;
};

class SignedMeasure {
 public:
  SignedMeasure(DiscreteSignedMeasure d) : payload_(std::move(d)) {}  // NOLINT(google-explicit-constructor)
  SignedMeasure(DensitySignedMeasure d) : payload_(std::move(d)) {}   // NOLINT(google-explicit-constructor)

  bool is_discrete() const noexcept { return std::holds_alternative<DiscreteSignedMeasure>(payload_); }
  const DiscreteSignedMeasure& discrete() const { return std::get<DiscreteSignedMeasure>(payload_); }
  const DensitySignedMeasure& density() const { return std::get<DensitySignedMeasure>(payload_); }

  const Interval& interval() const noexcept {
    return is_discrete() ? std::get<DiscreteSignedMeasure>(payload_).support()
                         : std::get<DensitySignedMeasure>(payload_).interval();
  }

 private:
  std::variant<DiscreteSignedMeasure, DensitySignedMeasure> payload_;
};

struct MomentSummary {
  double total_mass = 0.0;
  double first_moment = 0.0;
  std::optional<double> barycenter;  // set iff total_mass > 0
};

struct ProductMoments {
  double mass = 0.0;
  std::optional<double> barycenter_x;
  std::optional<double> barycenter_y;
};

namespace detail {

inline std::vector<double> merge_sorted(std::vector<double> a, std::span<const double> b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace detail

/// Integrate g against the restriction of m to [from, to] (closed).
///
/// Discrete: sum of w_k g(x_k) over atoms with from <= x_k <= to, ascending.
/// Density: quadrature of g * density over [from, to] intersected with the
/// measure interval, cut at g_kinks and the density's breakpoints. An empty
/// intersection integrates to 0.
template <class G>
double integrate_restricted(const G& g, std::span<const double> g_kinks, const SignedMeasure& m, double from,
                            double to, const QuadratureConfig& quad = {}) {
  if (m.is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : m.discrete().atoms())
      if (from <= a.position && a.position <= to) acc += a.weight * g(a.position);
    return acc;
  }
  const DensitySignedMeasure& d = m.density();
  const double lo = std::max(from, d.interval().lo());
  const double hi = std::min(to, d.interval().hi());
  if (!(lo < hi)) return 0.0;
  const std::vector<double> cuts = detail::merge_sorted(d.all_breakpoints(), g_kinks);
  const FunctionSpec& rho = d.density();
  auto integrand = [&](double x) { return g(x) * rho(x); };
  return integrate_panelized(integrand, Interval(lo, hi), cuts, quad).value;
}

/// μ([lo, hi]).
inline double total_mass(const SignedMeasure& m, const QuadratureConfig& quad = {}) {
  if (m.is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : m.discrete().atoms()) acc += a.weight;
    return acc;
  }
  const auto& d = m.density();
  const std::vector<double> cuts = d.all_breakpoints();
  return integrate_panelized(d.density(), d.interval(), cuts, quad).value;
}

/// ∫ f dμ. Requires f's domain to cover the measure (atoms for discrete, the interval for densities).
inline double integrate(const FunctionSpec& f, const SignedMeasure& m, const QuadratureConfig& quad = {}) {
  const Interval& iv = m.interval();
  if (!m.is_discrete() && !f.domain().contains(iv)) {
    const double bad = f.domain().contains(iv.lo()) ? iv.hi() : iv.lo();
    throw DomainError("function domain does not cover the measure interval; offending point x = " +
                          std::to_string(bad),
                      bad);
  }
  const std::vector<double> fk = f.kinks(iv);
  return integrate_restricted(f, fk, m, iv.lo(), iv.hi(), quad);
}

inline MomentSummary moments(const SignedMeasure& m, const QuadratureConfig& quad = {}) {
  MomentSummary s;
  s.total_mass = total_mass(m, quad);
  const Interval& iv = m.interval();
  s.first_moment = integrate_restricted([](double x) { return x; }, {}, m, iv.lo(), iv.hi(), quad);
  if (s.total_mass > 0) s.barycenter = s.first_moment / s.total_mass;
  return s;
}

/// Moments of the separable measure density(x) dx dy on mx.interval() x y_interval.
inline ProductMoments iterated_product_moments(const DensitySignedMeasure& mx, const Interval& y_interval,
                                               const QuadratureConfig& quad = {}) {
  const MomentSummary sx = moments(SignedMeasure(mx), quad);
  ProductMoments out;
  out.mass = sx.total_mass * y_interval.length();
  if (out.mass > 0) {
    out.barycenter_x = sx.barycenter;
    out.barycenter_y = y_interval.midpoint();
  }
  return out;
}

}  // namespace jlab
