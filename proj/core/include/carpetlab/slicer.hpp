#pragma once

#include <cstdint>
#include <vector>

#include "carpetlab/carpet.hpp"
#include "carpetlab/interval.hpp"
#include "carpetlab/measures.hpp"

namespace carpetlab {

inline constexpr std::uint64_t kDefaultCellBudget = 100'000'000;

/// The line y = slope * x + intercept with |slope| = m^u0 * m^j for an integer j.
/// Slope and intercept are enclosures; rational input stays exact up to rounding.
class Line {
 public:
  /// slope = +-m^u0, u0 in [0, 1).
  static Line from_exponent(int m, double u0, double t, bool negative = false);
  /// Any finite nonzero slope; u0 = frac(log_m |slope|).
  static Line from_slope(int m, double slope, double t);
  /// slope a/b, intercept c/d.
  static Line from_rational(int m, long long a, long long b, long long c, long long d);

  const Interval& slope() const noexcept { return slope_; }
  const Interval& intercept() const noexcept { return intercept_; }
  bool negative() const noexcept { return slope_.hi < 0; }
  double u0() const noexcept { return u0_; }
  double slope_value() const noexcept { return static_cast<double>(slope_.mid()); }
  double intercept_value() const noexcept { return static_cast<double>(intercept_.mid()); }

  /// The same set after swapping axes: x = (y - t)/s.
  Line transposed(int new_m) const;

  /// Meets [x0,x1] x [y0,y1] inflated by delta in the sup metric; never a
  /// false negative.
  bool may_meet(Interval x, Interval y, long double delta) const;

 private:
  Line(Interval slope, Interval intercept, double u0)
      : slope_(slope), intercept_(intercept), u0_(u0) {}
  Interval slope_;
  Interval intercept_;
  double u0_ = 0.0;
};

/// Cell [x/m^p, (x+1)/m^p) x [y/n^k, (y+1)/n^k).
struct CoverCell {
  std::uint64_t x_index = 0;
  std::uint64_t y_index = 0;
  int p = 0;
  int k = 0;
  auto operator<=>(const CoverCell&) const = default;
};

struct DepthCount {
  int k = 0;
  std::uint64_t count = 0;
};

struct SliceCover {
  int depth = 0;
  std::vector<CoverCell> cells;     // depth-k cells, canonical order
  std::vector<DepthCount> counts;   // k = 0..depth
  double inflation = 0.0;
  std::uint64_t visited = 0;
};

struct SliceOptions {
  double inflation = 0.0;
  std::uint64_t budget = kDefaultCellBudget;
};

/// Approximate squares of depth k (phase orbit from line.u0()) that meet the
/// carpet's symbolic constraints and the inflated line.
SliceCover slice_cover(const Carpet& c, const Line& line, int k,
                       const SliceOptions& opts = {});

/// N_k for k in [k_lo, k_hi] from one traversal of the pruned tree.
std::vector<DepthCount> slice_counts(const Carpet& c, const Line& line, int k_lo,
                                     int k_hi, const SliceOptions& opts = {});

struct BoundComparison {
  double theorem_h = 0.0;
  double theorem_p = 0.0;
  double prior = 0.0;
  double marstrand_h = 0.0;
  double marstrand_p = 0.0;
  bool hypothesis_met = false;  // m and n independent
};

struct SliceEstimate {
  double slope = 0.0;  // clamped at 0
  double raw_slope = 0.0;
  double stderr_slope = 0.0;
  int depth_lo = 0;
  int depth_hi = 0;
  std::vector<DepthCount> counts;
  bool empty = false;
  BoundComparison bounds;
};

BoundComparison bound_comparison(const Carpet& c);

/// Fit of log N_k against k log base after dropping `drop_head` leading depths.
/// All-zero counts give an empty estimate with slope 0.
SliceEstimate estimate_slice_dimension(const std::vector<DepthCount>& counts,
                                       int drop_head, int base);
SliceEstimate estimate_slice_dimension(const std::vector<DepthCount>& counts,
                                       int drop_head, const Carpet& c);

/// Uniform probability on the centres of the depth-k cover cells.
DiscreteMeasure frostman_approx(const Carpet& c, const Line& line, int k,
                                const SliceOptions& opts = {});

}  // namespace carpetlab
