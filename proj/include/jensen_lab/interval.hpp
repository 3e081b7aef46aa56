#pragma once

#include <cmath>
#include <string>

#include "jensen_lab/error.hpp"

namespace jlab {

/// Closed, bounded, non-degenerate interval [lo, hi].
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw InputError("interval endpoints must be finite");
    if (!(lo < hi))
      throw InputError("interval requires lo < hi, got [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool interior(double x) const noexcept { return lo_ < x && x < hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

}  // namespace jlab
