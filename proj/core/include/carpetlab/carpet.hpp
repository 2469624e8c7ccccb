#pragma once

#include <compare>
#include <map>
#include <span>
#include <vector>

namespace carpetlab {

/// One allowed digit pair (x, y) with 0 <= x < m and 0 <= y < n.
struct Digit {
  int x = 0;
  int y = 0;
  auto operator<=>(const Digit&) const = default;
};

/// Per-row occupancy of a digit set: which rows carry digits and how many.
struct RowStats {
  std::vector<int> occupied_rows;  // ascending
  std::map<int, int> row_count;    // j -> a(j)
  int total = 0;                   // |D|

  int max_count() const;
  bool uniform() const;
};

/// A Bedford-McMullen carpet in canonical orientation (m >= n).
///
/// Construction transposes the input when m < n, so downstream formulas can
/// always treat x as the strongly contracted axis. Digits are kept sorted and
/// deduplicated.
class Carpet {
 public:
  static Carpet create(int m, int n, std::vector<Digit> digits);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  std::span<const Digit> digits() const noexcept { return digits_; }
  const RowStats& rows() const noexcept { return rows_; }
  bool transposed() const noexcept { return transposed_; }
  bool degenerate() const noexcept { return digits_.size() == 1; }

  /// log n / log m, evaluated in extended precision. Equals 1 when m == n.
  long double theta() const noexcept { return theta_; }

  bool contains(int x, int y) const;
  /// Horizontal digits allowed in row j (empty for unoccupied rows).
  std::vector<int> row_digits(int j) const;
  /// Columns carrying at least one digit.
  std::vector<int> occupied_columns() const;
  /// Position of row j within rows().occupied_rows, or -1.
  int row_position(int j) const;

 private:
  Carpet() = default;

  int m_ = 0;
  int n_ = 0;
  std::vector<Digit> digits_;
  RowStats rows_;
  bool transposed_ = false;
  long double theta_ = 1.0L;
};

/// True iff m and n are not integer powers of a common base.
bool independent_exponents(int m, int n);
bool independence_check(const Carpet& c);

double dim_hausdorff(const Carpet& c);
double dim_box_packing(const Carpet& c);
/// Star (Assouad) dimension via Mackay's closed formula.
double dim_star(const Carpet& c);

enum class SliceKind { hausdorff, packing };

struct SliceBound {
  double value = 0.0;
  bool degenerate = false;  // dim* == 0; value forced to 0
};

SliceBound slice_bound(const Carpet& c, SliceKind which);
double prior_bound(const Carpet& c);
double marstrand_bound(double dim);

struct LambdaOptimum {
  double lambda = 0.0;
  double bound = 0.0;
};

/// Maximises min{lambda (dim* - 1), dim_x - lambda} over lambda in [0, 1].
LambdaOptimum optimize_lambda(double dim_star, double dim_x);

struct DimensionReport {
  int m = 0;
  int n = 0;
  double theta = 1.0;
  double dim_h = 0.0;
  double dim_bp = 0.0;
  double dim_star = 0.0;
  bool independent = false;
  bool ahlfors_regular = false;
  bool degenerate = false;
  double slice_bound_h = 0.0;
  double slice_bound_p = 0.0;
  double prior_bound = 0.0;
  double marstrand_h = 0.0;
  double marstrand_p = 0.0;
};

DimensionReport analyze(const Carpet& c);

// Row functionals from the two entropy chains. `v` is a probability vector
// indexed like rows().occupied_rows.

/// sum v_j log a(j)/log m + theta H(v)/log n + (1-theta) log|rows|/log n;
/// bounded by dim_box_packing with equality iff v_j = a(j)/|D|.
double packing_row_functional(const Carpet& c, std::span<const double> v);
/// sum v_j log a(j)/log m + H(v)/log n; bounded by dim_hausdorff with
/// equality iff v_j is proportional to a(j)^theta.
double hausdorff_row_functional(const Carpet& c, std::span<const double> v);

std::vector<double> packing_equality_vector(const Carpet& c);
std::vector<double> hausdorff_equality_vector(const Carpet& c);

}  // namespace carpetlab
