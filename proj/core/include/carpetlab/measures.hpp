#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carpetlab/symbolic.hpp"

namespace carpetlab {

struct Atom {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  bool operator==(const Atom&) const = default;
};

/// Finitely supported measure on [0,1)^2. Atom order is preserved by every
/// operation so that two computations of the same measure compare atom-wise.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Rejects negative/non-finite weights and points outside [0,1)^2.
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  static DiscreteMeasure point_mass(double x, double y);
  static DiscreteMeasure uniform(std::span<const std::pair<double, double>> points);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  double total_mass() const;
  bool is_normalized(double tol = 1e-9) const;
  /// Divides by the total mass; ZeroMassRegion if there is none.
  DiscreteMeasure normalized() const;

 private:
  std::vector<Atom> atoms_;
};

/// t * a + (1 - t) * b, atoms of a first.
DiscreteMeasure mix(const DiscreteMeasure& a, const DiscreteMeasure& b, double t);

/// Pairwise (cascade) summation: the result does not depend on thread count.
double pairwise_sum(std::span<const double> values);

/// -sum p log p in nats, 0 log 0 = 0. No normalisation check.
double shannon_entropy(std::span<const double> p);

/// Product of an x-partition into x_base^x_level columns and a y-partition
/// into y_base^y_level rows; a zero level leaves that axis unrefined.
struct GridPartition {
  int x_base = 2;
  int x_level = 0;
  int y_base = 2;
  int y_level = 0;

  static GridPartition square(int base, int level) { return {base, level, base, level}; }
  static GridPartition x_only(int base, int level) { return {base, level, base, 0}; }
  static GridPartition y_only(int base, int level) { return {base, 0, base, level}; }
  /// D_{m^p} x D_{n^k}.
  static GridPartition mixed(int m, int p, int n, int k) { return {m, p, n, k}; }

  std::pair<std::uint64_t, std::uint64_t> cell_of(double x, double y) const;
};

struct EntropyReport {
  double entropy = 0.0;  // nats
  std::size_t cell_count = 0;
  double normalized = 0.0;  // entropy / (level log base), y axis unless x-only
};

/// UnnormalizedMeasure unless total mass is 1 within 1e-9.
EntropyReport entropy(const DiscreteMeasure& mu, const GridPartition& part);

/// Cross entropy minus entropy; SupportMismatch if p > 0 where q = 0.
double gibbs_gap(std::span<const double> p, std::span<const double> q);

/// mu restricted to sq, renormalised, and blown up by (m^p, n^k) mod 1.
/// Atoms lighter than 1e-300 after renormalising are dropped.
DiscreteMeasure condition_rescale(const DiscreteMeasure& mu, const ApproxSquare& sq);
/// mu(sq).
double cell_mass(const DiscreteMeasure& mu, const ApproxSquare& sq);

/// Half-open [x0, x1) x [y0, y1).
struct Rect {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
  bool contains(double x, double y) const noexcept {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
};
using Region = std::vector<Rect>;

struct RestrictedEntropy {
  EntropyReport report;
  double retained_mass = 0.0;
};

RestrictedEntropy restricted_entropy(const DiscreteMeasure& mu, const Region& keep,
                                     const GridPartition& part);

/// Binary entropy in nats.
double binary_entropy(double delta);

struct CoverCount {
  std::size_t count = 0;
  std::string method;
};

/// Number of side-r grid cells anchored at the origin that meet the points.
/// Upper bound for the sup-metric covering number N_r, at most 4x too large.
CoverCount covering_number(std::span<const std::pair<double, double>> points, double r);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

/// Ordinary least squares; needs at least two distinct abscissae.
LinearFit least_squares(std::span<const double> xs, std::span<const double> ys);

/// Slope of H(mu, base^l square grid) against l log base over [level_lo, level_hi].
double finite_scale_dimension(const DiscreteMeasure& mu, int base, int level_lo,
                              int level_hi);

/// `x,y,weight` with a header line; values printed round-trip exact.
void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu);
DiscreteMeasure read_measure_csv(std::istream& in);

}  // namespace carpetlab
