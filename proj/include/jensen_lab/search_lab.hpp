#pragma once

// Randomized campaigns: the constrained tan optimization, the sharpness miner
// for the weighted-integral corollary, and soundness fuzzing of every verifier.
//
// All randomness flows through Stream, seeded from (seed, trial_index) only,
// so any trial can be regenerated on its own.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jensen_lab/instance.hpp"
#include "jensen_lab/jensen.hpp"

namespace jlab {

class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    eng_.seed(seq);
  }

  /// Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(double p) { return uniform() < p; }
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Generators for functions and measures satisfying the hypotheses by construction.

namespace gen {

/// Coefficients in x of Σ q_k (x - shift)^k.
inline std::vector<double> expand_shifted(const std::vector<double>& q, double shift) {
  std::vector<double> out(q.size(), 0.0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    double binom = 1.0;  // C(k, j)
    for (std::size_t j = 0; j <= k; ++j) {
      out[j] += q[k] * binom * std::pow(-shift, static_cast<double>(k - j));
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
    }
  }
  return out;
}

inline double sparse_nonneg(Stream& rng, double hi) { return rng.chance(0.4) ? 0.0 : rng.uniform(0.0, hi); }

/// A function convex on [from, to] with that domain.
inline FunctionSpec convex_on(Stream& rng, double from, double to) {
  const Interval dom(from, to);
  const int kind = rng.integer(0, 3);
  if (kind == 2 && from >= 0) return FunctionSpec::odd_power(rng.uniform(1.0, 4.0), dom);
  if (kind == 3 && from >= 0 && to < std::numbers::pi / 2 - 0.05) return FunctionSpec::tan(dom);
  if (kind == 1) {
    const int k = rng.integer(2, 5);
    std::vector<Point2> knots;
    double slope = rng.uniform(-1.0, 1.0);
    double y = rng.uniform(-1.0, 1.0);
    knots.push_back({from, y});
    for (int i = 1; i <= k; ++i) {
      const double x = (i == k) ? to : from + (to - from) * (i + rng.uniform(-0.4, 0.4)) / k;
      y += slope * (x - knots.back().x);
      knots.push_back({x, y});
      slope += 0.8 * rng.exponential();
    }
    return FunctionSpec::piecewise_linear(std::move(knots), dom);
  }
  std::vector<double> q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 2.0), sparse_nonneg(rng, 1.5),
                        sparse_nonneg(rng, 1.5), sparse_nonneg(rng, 1.5)};
  return FunctionSpec::polynomial(expand_shifted(q, from), dom);
}

/// Odd on its domain [-neg, pos] and convex on [0, pos].
inline FunctionSpec odd_convex(Stream& rng, double neg, double pos) {
  const Interval dom(-neg, pos);
  const double reach = std::max(neg, pos);
  switch (rng.integer(0, 3)) {
    case 0: return FunctionSpec::odd_power(rng.uniform(1.0, 4.0), dom);
    case 1:
      if (reach < std::numbers::pi / 2 - 0.05) return FunctionSpec::tan(dom);
      [[fallthrough]];
    case 2: {
      std::vector<double> c{0.0, rng.uniform(-1.0, 1.0), 0.0, sparse_nonneg(rng, 1.0), 0.0,
                            sparse_nonneg(rng, 0.5)};
      return FunctionSpec::polynomial(std::move(c), dom);
    }
    default: return FunctionSpec::odd_extension(convex_on(rng, 0.0, reach), dom);
  }
}

/// Value near one end of [lo, hi] with probability `edge`, otherwise uniform.
inline double biased(Stream& rng, double lo, double hi, double edge = 0.3) {
  if (rng.chance(edge)) {
    const double band = 0.05 * (hi - lo);
    return rng.chance(0.5) ? lo + band * rng.uniform() : hi - band * rng.uniform();
  }
  return rng.uniform(lo, hi);
}

/// Probability measure on [lo, hi] with barycenter exactly `bary` (up to rounding).
inline DiscreteSignedMeasure probability_with_barycenter(Stream& rng, double lo, double hi, double bary) {
  std::vector<Atom> atoms;
  const int pairs = rng.integer(1, 3);
  double total = 0.0;
  for (int j = 0; j < pairs; ++j) {
    const double u = rng.uniform(lo, bary);
    const double v = rng.uniform(bary, hi);
    const double omega = rng.exponential() + 1e-3;
    total += omega;
    if (v - u <= 0) {
      atoms.push_back({bary, omega});
      continue;
    }
    atoms.push_back({u, omega * (v - bary) / (v - u)});
    atoms.push_back({v, omega * (bary - u) / (v - u)});
  }
  for (Atom& a : atoms) a.weight /= total;
  return DiscreteSignedMeasure(std::move(atoms), Interval(lo, hi));
}

/// Atom list satisfying Steffensen's condition: prefix sums drawn in [0, total].
inline DiscreteSignedMeasure steffensen_measure(Stream& rng, double lo, double hi, double from) {
  const int n = rng.integer(2, 6);
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.uniform(from, hi);
  std::sort(xs.begin(), xs.end());
  const double total = rng.uniform(0.5, 2.0);
  std::vector<Atom> atoms;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = (i + 1 == n) ? total : total * rng.uniform();
    atoms.push_back({xs[i], s - prev});
    prev = s;
  }
  return DiscreteSignedMeasure(std::move(atoms), Interval(lo, hi));
}

/// Nondecreasing piecewise-linear weight on [-b, b], bounded below by 0.05, sometimes with an upward jump.
inline FunctionSpec nondecreasing_weight(Stream& rng, double b) {
  const int k = rng.integer(1, 4);
  std::vector<Point2> knots;
  double v = rng.uniform(0.05, 1.0);
  knots.push_back({-b, v});
  for (int i = 1; i < k; ++i) {
    const double x = -b + 2.0 * b * (i + rng.uniform(-0.4, 0.4)) / k;
    v += 0.5 * rng.exponential();
    knots.push_back({x, v});
    if (rng.chance(0.3)) {
      v += rng.exponential();
      knots.push_back({x, v});
    }
  }
  v += 0.5 * rng.exponential();
  knots.push_back({b, v});
  return FunctionSpec::piecewise_linear(std::move(knots), Interval(-b, b));
}

/// Step-like weight on [-b, b] with p(x) <= p(pivot) <= p(y) for x <= pivot <= y, not monotone in general.
inline FunctionSpec relaxed_weight(Stream& rng, double b, double pivot) {
  const double level = rng.uniform(0.2, 1.0);
  std::vector<Point2> knots;
  auto add_run = [&](double from, double to, bool below) {
    const int steps = rng.integer(1, 3);
    for (int i = 0; i < steps; ++i) {
      const double x0 = from + (to - from) * i / steps;
      const double x1 = (i + 1 == steps) ? to : from + (to - from) * (i + 1) / steps;
      const double val = below ? level * rng.uniform() : level + rng.exponential();
      knots.push_back({x0, val});
      knots.push_back({x1, val});
    }
  };
  if (pivot > -b) add_run(-b, pivot, true);
  add_run(pivot, b, false);
  // Collapse exact duplicates (a run ending where the next begins keeps both values as a jump).
  std::vector<Point2> clean;
  for (const Point2& k : knots) {
    if (clean.size() >= 2 && clean[clean.size() - 1].x == k.x && clean[clean.size() - 2].x == k.x)
      clean.back() = k;
    else
      clean.push_back(k);
  }
  return FunctionSpec::piecewise_linear(std::move(clean), Interval(-b, b));
}

inline Thm1Instance theorem1(Stream& rng) {
  const double a = -rng.uniform(0.2, 2.0);
  const double b = rng.uniform(0.3, 2.5);
  const double mid = 0.5 * (a + b);
  double c;
  const double pick = rng.uniform();
  if (pick < 0.15)
    c = a;
  else if (pick < 0.2)
    c = mid;
  else
    c = biased(rng, a, mid);
  const FunctionSpec base = convex_on(rng, c, b);
  FunctionSpec f = FunctionSpec::point_symmetric_extension(base, c, Interval(a, b));

  const double w_lo = std::min(2.0 * c - a, b);
  const double bary = w_lo < b ? biased(rng, w_lo, b) : b;
  const double reach = std::min(bary - a, b - bary);
  const double kind = rng.uniform();
  std::optional<SignedMeasure> m;
  if (kind < 0.05 || reach <= 0) {
    m = DiscreteSignedMeasure({{bary, 1.0}}, Interval(a, b));
  } else if (kind < 0.25) {
    const double delta = reach * rng.uniform(0.05, 1.0);
    m = DiscreteSignedMeasure({{bary - delta, 5.0 / 9}, {bary, -1.0 / 9}, {bary + delta, 5.0 / 9}}, Interval(a, b));
  } else if (kind < 0.33) {
    const double delta = reach * rng.uniform(0.05, 1.0);
    const Interval iv(bary - delta, bary + delta);
    m = DensitySignedMeasure(iv, FunctionSpec::polynomial({1.0 / iv.length()}, iv));
  } else {
    m = probability_with_barycenter(rng, a, b, bary);
  }
  bool concave = false;
  if (rng.chance(0.2)) {
    f = FunctionSpec::scale(f, -1.0);
    concave = true;
  }
  return {f, c, *m, concave};
}

inline Cor1Instance corollary1(Stream& rng) {
  const double b = rng.uniform(0.5, 2.0);
  double a;
  const double pick = rng.uniform();
  if (pick < 0.3)
    a = -b / 3.0 + 0.05 * b * rng.uniform();
  else if (pick < 0.4)
    a = rng.uniform(0.0, 0.9 * b);
  else
    a = rng.uniform(-b / 3.0, 0.9 * b);
  const FunctionSpec f = odd_convex(rng, b, b);
  Cor1Options opt;
  opt.relaxed = rng.chance(0.3);
  const FunctionSpec p = opt.relaxed ? relaxed_weight(rng, b, -a) : nondecreasing_weight(rng, b);
  return {f, p, a, b, opt};
}

inline Cor2Instance corollary2(Stream& rng) {
  const double neg = rng.uniform(0.3, 2.0);
  const double pos = rng.uniform(0.3, 2.0);
  const FunctionSpec f = odd_convex(rng, neg, pos);
  Cor2Instance inst{{}, {}, f};
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int n = rng.integer(1, 6);
    std::vector<double> xs(n);
    std::vector<double> ws(n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      xs[i] = rng.uniform(-std::min(neg, pos), pos);
      ws[i] = rng.exponential();
      wsum += ws[i];
    }
    for (double& w : ws) w /= wsum;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += ws[i] * xs[i];
    const auto imin = static_cast<std::size_t>(std::min_element(xs.begin(), xs.end()) - xs.begin());
    const double margin = mean + xs[imin];
    inst.points = xs;
    inst.weights = ws;
    if (margin < 0) continue;
    if (rng.chance(0.3)) {
      // Push the smallest point down until the margin is just above zero.
      const double target = 0.05 * rng.uniform();
      const double shift = (margin - target) / (1.0 + ws[imin]);
      if (xs[imin] - shift >= -neg) inst.points[imin] = xs[imin] - shift;
    }
    return inst;
  }
  return inst;
}

inline Cor3Instance corollary3(Stream& rng) {
  FunctionSpec f = FunctionSpec::tan(Interval(-std::numbers::pi / 6 + 1e-6, std::numbers::pi / 2 - 1e-3));
  if (rng.chance(0.5)) f = odd_convex(rng, rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0));
  const double lo = f.domain().lo();
  const double hi = f.domain().hi();
  Cor3Instance inst{{}, f};
  for (int attempt = 0; attempt < 200; ++attempt) {
    const int n = rng.integer(2, 6);
    std::vector<double> xs(n);
    for (double& x : xs) x = rng.uniform(lo, hi);
    double sum = 0.0;
    for (double x : xs) sum += x;
    const auto imin = static_cast<std::size_t>(std::min_element(xs.begin(), xs.end()) - xs.begin());
    const double margin = sum + (n - 2) * xs[imin];
    inst.points = xs;
    if (margin < 0) continue;
    if (rng.chance(0.3) && n > 1) {
      const double target = 0.05 * rng.uniform();
      const double shift = (margin - target) / (n - 1.0);
      if (xs[imin] - shift >= lo) inst.points[imin] = xs[imin] - shift;
    }
    return inst;
  }
  return inst;
}

/// Convex on [c, b] and above the chord through c, d on [a, c].
inline FunctionSpec left_almost_convex(Stream& rng, double a, double b, double c, double d) {
  std::vector<double> q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(0.05, 1.5),
                        sparse_nonneg(rng, 1.0), sparse_nonneg(rng, 0.5)};
  auto phi = [&](double u) {
    double acc = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * u + *it;
    return acc;
  };
  const double slope = (phi(d - c) - q[0]) / (d - c);
  // In u = x - c: h(u) + k1 (-u) + k2 u^2 - k3 u^3 with k >= 0, so the surplus over h is >= 0 for u <= 0.
  std::vector<double> left{q[0], slope - sparse_nonneg(rng, 1.0), sparse_nonneg(rng, 1.0), -sparse_nonneg(rng, 0.5)};
  const FunctionSpec right_fn = FunctionSpec::polynomial(expand_shifted(q, c), Interval(c, b));
  const FunctionSpec left_fn = FunctionSpec::polynomial(expand_shifted(left, c), Interval(a, c));
  return FunctionSpec::glue(left_fn, right_fn, c, Interval(a, b));
}

inline Thm3Instance theorem3(Stream& rng) {
  constexpr double third = std::numbers::pi / 3;
  if (rng.chance(0.25)) {
    // The tan triple family: ½δx − ¼δy + ¾δz on [−π/3, π/3] with witness (0, π/3).
    const FunctionSpec f = FunctionSpec::tan(Interval(-third, third));
    const AlmostConvexWitness w{0.0, third, true};
    std::optional<Thm3Instance> last;
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::array<double, 3> p{rng.uniform(-third, third), rng.uniform(-third, third), rng.uniform(-third, third)};
      std::sort(p.begin(), p.end());
      SignedMeasure m = DiscreteSignedMeasure({{p[0], 0.5}, {p[1], -0.25}, {p[2], 0.75}}, Interval(-third, third));
      last = Thm3Instance{f, m, w};
      const double bary = (2 * p[0] - p[1] + 3 * p[2]) / 4;
      if (bary >= 0 && thm3_condition_ii(f, m, w.c, w.d) >= 0) break;
    }
    return *last;
  }

  const double a = -rng.uniform(0.3, 2.0);
  const double b = rng.uniform(0.5, 2.0);
  const double c = a + (b - a) * rng.uniform(0.1, 0.7);
  const bool d_at_hi = rng.chance(0.2);
  const double d = d_at_hi ? b : c + (b - c) * rng.uniform(0.1, 0.95);
  const FunctionSpec f = left_almost_convex(rng, a, b, c, d);
  const AlmostConvexWitness w{c, d, d_at_hi};

  std::optional<Thm3Instance> last;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::optional<SignedMeasure> m;
    if (rng.chance(0.03)) {
      // (x - mid)^2 / r^2 - 1/6 plus a uniform part: a sum of SP densities.
      const double r = 0.5 * (b - a) * rng.uniform(0.2, 1.0);
      const double mid = rng.uniform(a + r, b - r);
      const double lambda = rng.uniform(0.0, 0.3);
      const Interval iv(mid - r, mid + r);
      m = DensitySignedMeasure(
          iv, FunctionSpec::polynomial({mid * mid / (r * r) - 1.0 / 6 + lambda, -2 * mid / (r * r), 1 / (r * r)}, iv));
    } else {
      m = steffensen_measure(rng, a, b, c - (c - a) * rng.uniform());
    }
    last = Thm3Instance{f, *m, w};
    const MomentSummary mom = moments(*m);
    if (mom.barycenter && *mom.barycenter >= c && thm3_condition_ii(f, *m, c, d) >= 0) break;
  }
  return *last;
}

inline Instance instance_for(Theorem t, Stream& rng) {
  switch (t) {
    case Theorem::thm1: return theorem1(rng);
    case Theorem::cor1: return corollary1(rng);
    case Theorem::cor2: return corollary2(rng);
    case Theorem::cor3: return corollary3(rng);
    case Theorem::thm3: return theorem3(rng);
  }
  return theorem1(rng);
}

}  // namespace gen

// ---------------------------------------------------------------------------
// The constrained tan optimization.

struct SearchResult {
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> best_point;
  long feasible_evaluations = 0;
  long total_evaluations = 0;
  std::uint64_t seed = 0;
  /// Feasible points whose objective is within 1e-6 of zero (first few found).
  std::vector<std::array<double, 3>> near_zero_points;
};

namespace tan_example {

inline constexpr double kLo = -std::numbers::pi / 3;
inline constexpr double kHi = std::numbers::pi / 3 - 1e-6;  // guard below the open end
inline constexpr double kNearZero = 1e-6;
inline constexpr std::size_t kMaxNearZero = 32;

inline bool feasible(double x, double y, double z) {
  if (!(kLo <= x && x <= y && y <= z && z <= kHi)) return false;
  const double lin = 2 * x - y + 3 * z;
  if (lin < 0) return false;
  const double rhs_const = std::numbers::pi / (3 * std::sqrt(3.0));
  return rhs_const * (2 * std::tan(x) - std::tan(y) + 3 * std::tan(z)) >= lin;
}

inline double objective(double x, double y, double z) {
  return std::tan((2 * x - y + 3 * z) / 4) - (2 * std::tan(x) - std::tan(y) + 3 * std::tan(z)) / 4;
}

}  // namespace tan_example

/// Maximize the tan objective over the feasible triplets: random sampling
/// (30% drawn next to the 2x - y + 3z >= 0 face) followed by coordinate-wise
/// golden-section passes in the chart (s, y, z), s = 2x - y + 3z.
inline SearchResult optimize_tan_example(long budget, std::uint64_t seed) {
  using namespace tan_example;
  if (budget < 1) throw InputError("budget must be >= 1");
  SearchResult res;
  res.seed = seed;

  struct Cand {
    double value;
    std::array<double, 3> p;
  };
  constexpr std::size_t kKeep = 4;
  std::vector<Cand> top;

  auto eval = [&](double x, double y, double z) {
    ++res.total_evaluations;
    if (!feasible(x, y, z)) return -std::numeric_limits<double>::infinity();
    ++res.feasible_evaluations;
    const double v = objective(x, y, z);
    if (v >= -kNearZero && res.near_zero_points.size() < kMaxNearZero) res.near_zero_points.push_back({x, y, z});
    if (v > res.best_value) {
      res.best_value = v;
      res.best_point = {x, y, z};
    }
    return v;
  };

  Stream rng(seed);
  for (long i = 0; i < budget; ++i) {
    double x, y, z;
    if (rng.chance(0.3)) {
      // Near the faces y = z and 2x - y + 3z = 0; each face is hit exactly half the time.
      auto slack = [&] { return rng.chance(0.5) ? 0.0 : 0.05 * std::pow(rng.uniform(), 3); };
      z = rng.uniform(kLo, kHi);
      y = std::max(kLo, z - slack());
      x = (slack() + y - 3 * z) / 2;
    } else {
      std::array<double, 3> p{rng.uniform(kLo, kHi), rng.uniform(kLo, kHi), rng.uniform(kLo, kHi)};
      std::sort(p.begin(), p.end());
      x = p[0], y = p[1], z = p[2];
    }
    const double v = eval(x, y, z);
    if (v == -std::numeric_limits<double>::infinity()) continue;
    top.push_back({v, {x, y, z}});
    std::sort(top.begin(), top.end(), [](const Cand& l, const Cand& r) { return l.value > r.value; });
    if (top.size() > kKeep) top.pop_back();
  }

  // Chart (s, y, z) -> (x, y, z).
  auto eval_chart = [&](const std::array<double, 3>& q) { return eval((q[0] + q[1] - 3 * q[2]) / 2, q[1], q[2]); };
  constexpr double kInvPhi = 0.6180339887498949;
  for (const Cand& start : top) {
    std::array<double, 3> q{2 * start.p[0] - start.p[1] + 3 * start.p[2], start.p[1], start.p[2]};
    double best = start.value;
    double radius = 0.1;
    for (int pass = 0; pass < 40 && radius > 1e-14; ++pass) {
      bool improved = false;
      for (int k = 0; k < 3; ++k) {
        double lo = q[k] - radius;
        double hi = q[k] + radius;
        if (k == 0) lo = std::max(lo, 0.0);
        auto at = [&](double v) {
          std::array<double, 3> t = q;
          t[k] = v;
          return eval_chart(t);
        };
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = at(x1);
        double f2 = at(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = at(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = at(x1);
          }
        }
        const double cand_x = f1 >= f2 ? x1 : x2;
        const double cand_v = std::max(f1, f2);
        // Also try the bracket ends: the optimum sits on a constraint face.
        for (double v : {lo, hi, cand_x}) {
          const double fv = v == cand_x ? cand_v : at(v);
          if (fv > best) {
            best = fv;
            q[k] = v;
            improved = true;
          }
        }
      }
      if (!improved) radius *= 0.5;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sharpness of the a >= -b/3 restriction.

struct CounterexampleResult {
  bool found = false;
  std::optional<Cor1Instance> witness;
  double observed_gap = 0.0;
  long evaluations = 0;
  std::uint64_t seed = 0;
};

inline constexpr double kCounterexampleGap = 1e-6;

/// Draws a < -b/3 (never the boundary), an odd f convex on [0, b] and a weight
/// that is either nondecreasing or relaxed-admissible around -a, and returns the
/// first draw whose inequality fails by more than 1e-6 with every other
/// hypothesis satisfied. Candidates are judged by verify_corollary1 with the
/// range check turned off.
inline CounterexampleResult mine_cor1_sharpness(double b, long budget, std::uint64_t seed,
                                                const Settings& s = {}) {
  if (!(b > 0)) throw InputError("b must be > 0");
  if (budget < 1) throw InputError("budget must be >= 1");
  CounterexampleResult res;
  res.seed = seed;
  for (long i = 0; i < budget; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    ++res.evaluations;
    const double u = rng.uniform();  // [0, 1)
    const double a = -b / 3.0 - (2.0 * b / 3.0) * u;
    if (!(a < -b / 3.0 && a > -b)) continue;
    Cor1Instance inst{gen::odd_convex(rng, b, b), FunctionSpec::tan(Interval(0, 1)), a, b, {}};
    inst.options.check_range = false;
    inst.options.relaxed = rng.chance(0.5);
    inst.p = inst.options.relaxed ? gen::relaxed_weight(rng, b, -a) : gen::nondecreasing_weight(rng, b);
    const JensenReport r = verify_corollary1(inst.f, inst.p, inst.a, inst.b, inst.options, s);
    if (r.all_hypotheses_hold() && r.gap < -kCounterexampleGap) {
      res.found = true;
      res.witness = inst;
      res.observed_gap = r.gap;
      return res;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Soundness fuzzing.

struct FuzzReport {
  Theorem theorem = Theorem::thm1;
  long requested = 0;  // hypothesis-passing instances asked for
  long draws = 0;      // instances generated
  long passed = 0;
  long hypothesis_failed = 0;
  long violated = 0;
  double min_gap = std::numeric_limits<double>::infinity();  // over hypothesis-passing draws, sign-adjusted
  std::uint64_t seed = 0;
  std::optional<Instance> first_violation;
  long first_violation_trial = -1;

  long hypothesis_passing() const { return passed + violated; }
  double pass_rate() const { return draws > 0 ? static_cast<double>(hypothesis_passing()) / draws : 0.0; }
};

/// Soundness threshold: no hypothesis-passing trial may have a gap below this.
inline constexpr double kSoundnessGap = 1e-7;
/// Draw cap as a multiple of the requested passing count.
inline constexpr long kFuzzDrawFactor = 20;

/// Draws instances until `trials` of them pass every hypothesis (or the draw
/// cap is hit). Trial i is generated from Stream(seed, i) alone.
inline FuzzReport fuzz_theorem(Theorem t, long trials, std::uint64_t seed, const Settings& s = {}) {
  if (trials < 1) throw InputError("trials must be >= 1");
  FuzzReport rep;
  rep.theorem = t;
  rep.requested = trials;
  rep.seed = seed;
  for (long i = 0; rep.hypothesis_passing() < trials && i < kFuzzDrawFactor * trials; ++i) {
    Stream rng(seed, static_cast<std::uint64_t>(i));
    const Instance inst = gen::instance_for(t, rng);
    const JensenReport r = verify(inst, s);
    ++rep.draws;
    if (r.verdict == Verdict::hypothesis_failed) {
      ++rep.hypothesis_failed;
      continue;
    }
    // Concave mode expects the reverse sign.
    const bool concave = std::holds_alternative<Thm1Instance>(inst) && std::get<Thm1Instance>(inst).concave;
    const double signed_gap = concave ? -r.gap : r.gap;
    rep.min_gap = std::min(rep.min_gap, signed_gap);
    if (r.verdict == Verdict::violated || signed_gap < -kSoundnessGap) {
      ++rep.violated;
      if (!rep.first_violation) {
        rep.first_violation = inst;
        rep.first_violation_trial = i;
      }
    } else {
      ++rep.passed;
    }
  }
  return rep;
}

}  // namespace jlab
