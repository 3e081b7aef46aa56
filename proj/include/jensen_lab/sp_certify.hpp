#pragma once

// Steffensen-Popoviciu certification on an interval.
//
// A signed measure μ on [a, b] with μ([a, b]) > 0 is SP iff both endpoint
// profiles
//     left(t)  = ∫_a^t (t - x) dμ(x)
//     right(t) = ∫_t^b (x - t) dμ(x)
// are nonnegative for every t in [a, b]. For atom lists both profiles are
// piecewise linear with kinks at the atoms, so checking atoms and endpoints
// is exact. Densities are scanned on a grid.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jensen_lab/error.hpp"
#include "jensen_lab/measure.hpp"
#include "jensen_lab/settings.hpp"

namespace jlab {

struct SteffensenVerdict {
  bool passes = false;
  std::vector<double> partial_sums;
  double total = 0.0;
};

/// Prefix sums in position order; passes iff total > 0 and 0 <= S_m <= total for all m.
inline SteffensenVerdict check_steffensen_discrete(const DiscreteSignedMeasure& m) {
  SteffensenVerdict v;
  double s = 0.0;
  for (const Atom& a : m.atoms()) {
    s += a.weight;
    v.partial_sums.push_back(s);
  }
  v.total = s;
  v.passes = v.total > 0;
  for (double p : v.partial_sums)
    if (p < 0.0 || p > v.total) v.passes = false;
  return v;
}

struct ProfileValues {
  double left = 0.0;
  double right = 0.0;
};

inline ProfileValues endpoint_profiles(const SignedMeasure& m, double t, const QuadratureConfig& quad = {}) {
  const Interval& iv = m.interval();
  if (!iv.contains(t))
    throw InputError("profile point t = " + std::to_string(t) + " lies outside the measure interval");
  const double kink[] = {t};
  ProfileValues p;
  p.left = integrate_restricted([t](double x) { return t - x; }, kink, m, iv.lo(), t, quad);
  p.right = integrate_restricted([t](double x) { return x - t; }, kink, m, t, iv.hi(), quad);
  return p;
}

enum class CertMethod { exact_breakpoint, grid_scan };

inline const char* cert_method_name(CertMethod m) {
  return m == CertMethod::exact_breakpoint ? "exact-breakpoint" : "grid-scan";
}

struct ProfileWitness {
  double t = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

struct SPCertificate {
  bool is_sp = false;
  double total_mass = 0.0;
  ProfileWitness worst_left;
  ProfileWitness worst_right;
  CertMethod method = CertMethod::exact_breakpoint;
  int scan_points = 0;
};

/// Thrown when a density scan fails to converge; carries the certificate as far as it got.
class SpScanError : public NonConvergenceError {
 public:
  SpScanError(const NonConvergenceError& cause, SPCertificate partial)
      : NonConvergenceError(std::string("SP scan aborted: ") + cause.what(), cause.best_value(),
                            cause.error_estimate()),
        partial_(partial) {}
  const SPCertificate& partial() const noexcept { return partial_; }

 private:
  SPCertificate partial_;
};

/// The t values at which certify_sp evaluates the profiles.
inline std::vector<double> certification_points(const SignedMeasure& m, int scan_resolution) {
  const Interval& iv = m.interval();
  std::vector<double> ts;
  if (m.is_discrete()) {
    ts.push_back(iv.lo());
    for (const Atom& a : m.discrete().atoms()) ts.push_back(a.position);
    ts.push_back(iv.hi());
  } else {
    if (scan_resolution < 2) throw InputError("scan_resolution must be >= 2 for density measures");
    for (int i = 0; i < scan_resolution; ++i)
      ts.push_back(i + 1 == scan_resolution ? iv.hi()
                                            : iv.lo() + iv.length() * i / (scan_resolution - 1.0));
    for (double b : m.density().all_breakpoints()) ts.push_back(b);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

inline SPCertificate certify_sp(const SignedMeasure& m, const Settings& settings = {}) {
  SPCertificate cert;
  cert.method = m.is_discrete() ? CertMethod::exact_breakpoint : CertMethod::grid_scan;
  const std::vector<double> ts = certification_points(m, settings.scan_resolution);
  cert.scan_points = static_cast<int>(ts.size());
  try {
    cert.total_mass = total_mass(m, settings.quad);
    for (double t : ts) {
      const ProfileValues p = endpoint_profiles(m, t, settings.quad);
      if (p.left < cert.worst_left.value) cert.worst_left = {t, p.left};
      if (p.right < cert.worst_right.value) cert.worst_right = {t, p.right};
    }
  } catch (const NonConvergenceError& e) {
    throw SpScanError(e, cert);
  }
  cert.is_sp = cert.total_mass > 0 && cert.worst_left.value >= -settings.cert_tol &&
               cert.worst_right.value >= -settings.cert_tol;
  return cert;
}

struct ProfileSample {
  double t;
  double left;
  double right;
};

/// Profile curve on `points` uniformly spaced t values plus the certification points.
inline std::vector<ProfileSample> profile_curve(const SignedMeasure& m, int points,
                                                const QuadratureConfig& quad = {}) {
  std::vector<double> ts = certification_points(m, std::max(points, 2));
  const Interval& iv = m.interval();
  for (int i = 0; i < points; ++i) ts.push_back(iv.lo() + iv.length() * i / std::max(points - 1, 1));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<ProfileSample> out;
  out.reserve(ts.size());
  for (double t : ts) {
    if (!iv.contains(t)) continue;
    const ProfileValues p = endpoint_profiles(m, t, quad);
    out.push_back({t, p.left, p.right});
  }
  return out;
}

}  // namespace jlab
