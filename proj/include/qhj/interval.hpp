#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhj {

/// Closed real interval [lo, hi]. lo == hi is a single point; infinite
/// endpoints mark an unbounded domain (analytic bases).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains(const Interval& other) const {
    return other.lo >= lo && other.hi <= hi;
  }
  double length() const { return hi - lo; }
  double clamp(double x) const { return std::min(std::max(x, lo), hi); }
  bool unbounded() const { return std::isinf(lo) || std::isinf(hi); }

  static Interval whole_line();
  static Interval ordered(double a, double b) {
    return a <= b ? Interval{a, b} : Interval{b, a};
  }
};

inline Interval Interval::whole_line() {
  return {-std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
}

}  // namespace qhj
