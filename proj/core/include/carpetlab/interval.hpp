#pragma once

#include <algorithm>
#include <cmath>

namespace carpetlab {

/// Closed interval of long doubles. Every operation widens its result by one
/// ulp on each side, so the true real result is always enclosed.
struct Interval {
  long double lo = 0.0L;
  long double hi = 0.0L;

  static Interval point(long double v) { return {v, v}; }
  /// v known only to rounding: one ulp either way.
  static Interval around(long double v) { return widen({v, v}); }
  static Interval widen(Interval a) {
    return {std::nextafter(a.lo, -HUGE_VALL), std::nextafter(a.hi, HUGE_VALL)};
  }

  bool contains(long double v) const { return lo <= v && v <= hi; }
  long double mid() const { return lo + (hi - lo) / 2; }

  friend Interval operator+(Interval a, Interval b) { return widen({a.lo + b.lo, a.hi + b.hi}); }
  friend Interval operator-(Interval a) { return {-a.hi, -a.lo}; }
  friend Interval operator-(Interval a, Interval b) { return a + (-b); }
  friend Interval operator*(Interval a, Interval b) {
    const long double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return widen({*std::min_element(p, p + 4), *std::max_element(p, p + 4)});
  }
  /// b must not contain 0.
  friend Interval operator/(Interval a, Interval b) {
    const long double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return widen({*std::min_element(p, p + 4), *std::max_element(p, p + 4)});
  }
};

}  // namespace carpetlab
