#include "carpetlab/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "carpetlab/error.hpp"
#include "carpetlab/symbolic.hpp"

namespace carpetlab {

namespace {

double phase_of_slope(int m, long double magnitude) {
  const long double e = std::log(magnitude) / std::log(static_cast<long double>(m));
  long double u = e - std::floor(e);
  if (u >= 1.0L) u = 0.0L;
  return static_cast<double>(u);
}

void check_m(int m) {
  if (m < 2) throw Error(ErrorCode::BadExponent, "line exponent base must be >= 2");
}

// Depth-first walk of the pruned cylinder tree. ys/xs hold the current digit
// words; a node at depth d has d y-digits and R(d) x-digits.
class CoverWalk {
 public:
  CoverWalk(const Carpet& c, const Line& line, int k_max, const SliceOptions& opts,
            int collect_depth)
      : c_(c), line_(line), k_max_(k_max), opts_(opts), collect_depth_(collect_depth) {
    if (k_max < 0) throw Error(ErrorCode::DomainError, "depth must be nonnegative");
    if (!(opts.inflation >= 0.0)) throw Error(ErrorCode::DomainError, "inflation must be >= 0");
    const RotationOrbit orbit = RotationOrbit::for_carpet(c, line.u0());
    returns_.resize(static_cast<std::size_t>(k_max) + 1);
    int p_max = 0;
    for (int i = 0; i <= k_max; ++i) {
      returns_[static_cast<std::size_t>(i)] = orbit.returns_at(static_cast<std::uint64_t>(i));
      p_max += returns_[static_cast<std::size_t>(i)] ? 1 : 0;
    }
    x_scale_.push_back(1.0L);
    for (int i = 1; i <= p_max; ++i) {
      x_scale_.push_back(static_cast<long double>(checked_pow(c.m(), i)));
    }
    y_scale_.push_back(1.0L);
    for (int i = 1; i <= k_max; ++i) {
      y_scale_.push_back(static_cast<long double>(checked_pow(c.n(), i)));
    }
    xs_.assign(static_cast<std::size_t>(p_max) + 1, 0);
    ys_.assign(static_cast<std::size_t>(k_max) + 1, 0);
    col_used_.assign(static_cast<std::size_t>(c.m()), false);
    row_used_.assign(static_cast<std::size_t>(c.n()), false);
    for (const Digit& d : c.digits()) {
      col_used_[static_cast<std::size_t>(d.x)] = true;
      row_used_[static_cast<std::size_t>(d.y)] = true;
    }
    counts_.assign(static_cast<std::size_t>(k_max) + 1, 0);
  }

  void run() {
    if (returns_[0]) {
      for (int x = 0; x < c_.m(); ++x) {
        if (!col_used_[static_cast<std::size_t>(x)]) continue;
        xs_[0] = x;
        visit(0, 1, static_cast<std::uint64_t>(x), 0);
      }
    } else {
      visit(0, 0, 0, 0);
    }
    std::sort(cells_.begin(), cells_.end());
  }

  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::vector<CoverCell>& cells() { return cells_; }
  std::uint64_t visited() const { return visited_; }

 private:
  void visit(int d, int p, std::uint64_t X, std::uint64_t Y) {
    if (++visited_ > opts_.budget) {
      throw Error(ErrorCode::CellBudgetExceeded,
                  "slice enumeration exceeded " + std::to_string(opts_.budget) +
                      " visited cells");
    }
    const long double sx = x_scale_[static_cast<std::size_t>(p)];
    const long double sy = y_scale_[static_cast<std::size_t>(d)];
    const auto fx = static_cast<long double>(X);
    const auto fy = static_cast<long double>(Y);
    const Interval xr{Interval::around(fx / sx).lo, Interval::around((fx + 1.0L) / sx).hi};
    const Interval yr{Interval::around(fy / sy).lo, Interval::around((fy + 1.0L) / sy).hi};
    if (!line_.may_meet(xr, yr, opts_.inflation)) return;

    ++counts_[static_cast<std::size_t>(d)];
    if (d == collect_depth_) cells_.push_back({X, Y, p, d});
    if (d == k_max_) return;

    const bool step_x = returns_[static_cast<std::size_t>(d) + 1];
    for (int y = 0; y < c_.n(); ++y) {
      // y sits at position d; pair it with an x-digit already chosen there.
      if (p > d ? !c_.contains(xs_[static_cast<std::size_t>(d)], y)
                : !row_used_[static_cast<std::size_t>(y)]) {
        continue;
      }
      ys_[static_cast<std::size_t>(d)] = y;
      const std::uint64_t Yc = Y * static_cast<std::uint64_t>(c_.n()) + static_cast<std::uint64_t>(y);
      if (!step_x) {
        visit(d + 1, p, X, Yc);
        continue;
      }
      for (int x = 0; x < c_.m(); ++x) {
        if (p <= d ? !c_.contains(x, ys_[static_cast<std::size_t>(p)])
                   : !col_used_[static_cast<std::size_t>(x)]) {
          continue;
        }
        xs_[static_cast<std::size_t>(p)] = x;
        visit(d + 1, p + 1,
              X * static_cast<std::uint64_t>(c_.m()) + static_cast<std::uint64_t>(x), Yc);
      }
    }
  }

  const Carpet& c_;
  const Line& line_;
  int k_max_;
  SliceOptions opts_;
  int collect_depth_;
  std::vector<bool> returns_;
  std::vector<long double> x_scale_;
  std::vector<long double> y_scale_;
  std::vector<int> xs_;
  std::vector<int> ys_;
  std::vector<bool> col_used_;
  std::vector<bool> row_used_;
  std::vector<std::uint64_t> counts_;
  std::vector<CoverCell> cells_;
  std::uint64_t visited_ = 0;
};

}  // namespace

Line Line::from_exponent(int m, double u0, double t, bool negative) {
  check_m(m);
  if (!(u0 >= 0.0 && u0 < 1.0)) throw Error(ErrorCode::DomainError, "u0 must lie in [0,1)");
  if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "intercept must be finite");
  const long double s = std::pow(static_cast<long double>(m), static_cast<long double>(u0));
  Interval slope = Interval::widen(Interval::widen(Interval::around(s)));
  if (u0 == 0.0) slope = Interval::point(1.0L);
  if (negative) slope = -slope;
  return Line(slope, Interval::point(t), u0);
}

Line Line::from_slope(int m, double slope, double t) {
  check_m(m);
  if (slope == 0.0 || !std::isfinite(slope)) {
    throw Error(ErrorCode::AxisParallelLine, "slope must be finite and nonzero");
  }
  if (!std::isfinite(t)) throw Error(ErrorCode::DomainError, "intercept must be finite");
  return Line(Interval::point(slope), Interval::point(t),
              phase_of_slope(m, std::fabs(static_cast<long double>(slope))));
}

Line Line::from_rational(int m, long long a, long long b, long long c, long long d) {
  check_m(m);
  if (b == 0 || d == 0) throw Error(ErrorCode::DomainError, "zero denominator");
  if (a == 0) throw Error(ErrorCode::AxisParallelLine, "slope must be nonzero");
  const Interval slope = Interval::point(static_cast<long double>(a)) /
                         Interval::point(static_cast<long double>(b));
  const Interval intercept = Interval::point(static_cast<long double>(c)) /
                             Interval::point(static_cast<long double>(d));
  const long double mag = std::fabs(static_cast<long double>(a) / static_cast<long double>(b));
  return Line(slope, intercept, phase_of_slope(m, mag));
}

Line Line::transposed(int new_m) const {
  check_m(new_m);
  const Interval one = Interval::point(1.0L);
  const Interval slope = one / slope_;
  const Interval intercept = -(intercept_ / slope_);
  return Line(slope, intercept, phase_of_slope(new_m, std::fabs(slope.mid())));
}

bool Line::may_meet(Interval x, Interval y, long double delta) const {
  const Interval xs{x.lo - delta, x.hi + delta};
  const Interval values = slope_ * Interval::widen(xs) + intercept_;
  return values.lo <= y.hi + delta && values.hi >= y.lo - delta;
}

SliceCover slice_cover(const Carpet& c, const Line& line, int k, const SliceOptions& opts) {
  CoverWalk walk(c, line, k, opts, k);
  walk.run();
  SliceCover cover;
  cover.depth = k;
  cover.cells = std::move(walk.cells());
  for (int d = 0; d <= k; ++d) cover.counts.push_back({d, walk.counts()[static_cast<std::size_t>(d)]});
  cover.inflation = opts.inflation;
  cover.visited = walk.visited();
  return cover;
}

std::vector<DepthCount> slice_counts(const Carpet& c, const Line& line, int k_lo, int k_hi,
                                     const SliceOptions& opts) {
  if (k_lo < 0 || k_hi < k_lo) throw Error(ErrorCode::DomainError, "bad depth range");
  CoverWalk walk(c, line, k_hi, opts, -1);
  walk.run();
  std::vector<DepthCount> out;
  for (int d = k_lo; d <= k_hi; ++d) out.push_back({d, walk.counts()[static_cast<std::size_t>(d)]});
  return out;
}

BoundComparison bound_comparison(const Carpet& c) {
  const DimensionReport r = analyze(c);
  return {r.slice_bound_h, r.slice_bound_p, r.prior_bound, r.marstrand_h, r.marstrand_p,
          r.independent};
}

SliceEstimate estimate_slice_dimension(const std::vector<DepthCount>& counts, int drop_head,
                                       int base) {
  if (base < 2) throw Error(ErrorCode::DomainError, "regression base must be >= 2");
  if (drop_head < 0) throw Error(ErrorCode::DomainError, "drop_head must be >= 0");
  SliceEstimate est;
  est.counts = counts;
  if (std::all_of(counts.begin(), counts.end(), [](const DepthCount& d) { return d.count == 0; })) {
    est.empty = true;
    if (!counts.empty()) {
      est.depth_lo = counts.front().k;
      est.depth_hi = counts.back().k;
    }
    return est;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = static_cast<std::size_t>(drop_head); i < counts.size(); ++i) {
    if (counts[i].count == 0) continue;
    if (xs.empty()) est.depth_lo = counts[i].k;
    est.depth_hi = counts[i].k;
    xs.push_back(counts[i].k * std::log(static_cast<double>(base)));
    ys.push_back(std::log(static_cast<double>(counts[i].count)));
  }
  if (xs.size() < 3) {
    throw Error(ErrorCode::InsufficientData,
                "need 3 depths with nonzero counts after dropping " + std::to_string(drop_head));
  }
  const LinearFit fit = least_squares(xs, ys);
  est.raw_slope = fit.slope;
  est.slope = std::max(0.0, fit.slope);
  est.stderr_slope = fit.stderr_slope;
  return est;
}

SliceEstimate estimate_slice_dimension(const std::vector<DepthCount>& counts, int drop_head,
                                       const Carpet& c) {
  SliceEstimate est = estimate_slice_dimension(counts, drop_head, c.n());
  est.bounds = bound_comparison(c);
  return est;
}

DiscreteMeasure frostman_approx(const Carpet& c, const Line& line, int k,
                                const SliceOptions& opts) {
  const SliceCover cover = slice_cover(c, line, k, opts);
  if (cover.cells.empty()) {
    throw Error(ErrorCode::EmptySlice, "no cover cells at depth " + std::to_string(k));
  }
  std::vector<std::pair<double, double>> centres;
  centres.reserve(cover.cells.size());
  for (const CoverCell& cell : cover.cells) {
    const auto sx = static_cast<long double>(checked_pow(c.m(), cell.p));
    const auto sy = static_cast<long double>(checked_pow(c.n(), cell.k));
    centres.emplace_back(
        static_cast<double>((static_cast<long double>(cell.x_index) + 0.5L) / sx),
        static_cast<double>((static_cast<long double>(cell.y_index) + 0.5L) / sy));
  }
  return DiscreteMeasure::uniform(centres);
}

}  // namespace carpetlab
