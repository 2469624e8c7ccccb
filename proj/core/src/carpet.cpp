#include "carpetlab/carpet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "carpetlab/error.hpp"
#include "carpetlab/measures.hpp"

namespace carpetlab {

namespace {

// Smallest r with value == r^e for some e >= 1.
int primitive_root(int value) {
  for (int r = 2; r * r <= value; ++r) {
    long long p = r;
    while (p < value) p *= r;
    if (p == value) return r;
  }
  return value;
}

long double log_ratio(int num, int den) {
  return std::log(static_cast<long double>(num)) /
         std::log(static_cast<long double>(den));
}

void check_row_vector(const Carpet& c, std::span<const double> v) {
  if (v.size() != c.rows().occupied_rows.size()) {
    throw Error(ErrorCode::DomainError,
                "row vector has " + std::to_string(v.size()) +
                    " entries, carpet has " +
                    std::to_string(c.rows().occupied_rows.size()) + " rows");
  }
  for (double x : v) {
    if (!(x >= 0.0)) {
      throw Error(ErrorCode::DomainError, "row vector has a negative entry");
    }
  }
}

}  // namespace

int RowStats::max_count() const {
  int best = 0;
  for (const auto& [row, count] : row_count) best = std::max(best, count);
  return best;
}

bool RowStats::uniform() const {
  if (row_count.empty()) return true;
  const int first = row_count.begin()->second;
  return std::all_of(row_count.begin(), row_count.end(),
                     [first](const auto& kv) { return kv.second == first; });
}

Carpet Carpet::create(int m, int n, std::vector<Digit> digits) {
  if (m < 2 || n < 2) {
    throw Error(ErrorCode::BadExponent,
                "exponents must be >= 2, got m=" + std::to_string(m) +
                    " n=" + std::to_string(n));
  }
  if (digits.empty()) {
    throw Error(ErrorCode::EmptyDigits, "digit set is empty");
  }
  for (const Digit& d : digits) {
    if (d.x < 0 || d.x >= m || d.y < 0 || d.y >= n) {
      throw Error(ErrorCode::DigitOutOfRange,
                  "digit (" + std::to_string(d.x) + "," + std::to_string(d.y) +
                      ") outside [0," + std::to_string(m) + ")x[0," +
                      std::to_string(n) + ")");
    }
  }

  Carpet c;
  if (m < n) {
    std::swap(m, n);
    for (Digit& d : digits) std::swap(d.x, d.y);
    c.transposed_ = true;
  }
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());

  c.m_ = m;
  c.n_ = n;
  c.digits_ = std::move(digits);
  c.theta_ = (m == n) ? 1.0L : log_ratio(n, m);

  for (const Digit& d : c.digits_) ++c.rows_.row_count[d.y];
  for (const auto& [row, count] : c.rows_.row_count) {
    c.rows_.occupied_rows.push_back(row);
  }
  c.rows_.total = static_cast<int>(c.digits_.size());
  return c;
}

bool Carpet::contains(int x, int y) const {
  return std::binary_search(digits_.begin(), digits_.end(), Digit{x, y});
}

std::vector<int> Carpet::row_digits(int j) const {
  std::vector<int> out;
  for (const Digit& d : digits_) {
    if (d.y == j) out.push_back(d.x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Carpet::occupied_columns() const {
  std::vector<int> cols;
  for (const Digit& d : digits_) cols.push_back(d.x);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

int Carpet::row_position(int j) const {
  const auto& rows = rows_.occupied_rows;
  auto it = std::lower_bound(rows.begin(), rows.end(), j);
  if (it == rows.end() || *it != j) return -1;
  return static_cast<int>(it - rows.begin());
}

bool independent_exponents(int m, int n) {
  return primitive_root(m) != primitive_root(n);
}

bool independence_check(const Carpet& c) {
  return independent_exponents(c.m(), c.n());
}

double dim_hausdorff(const Carpet& c) {
  const long double theta = c.theta();
  long double sum = 0.0L;
  for (const auto& [row, count] : c.rows().row_count) {
    sum += std::pow(static_cast<long double>(count), theta);
  }
  return static_cast<double>(std::log(sum) /
                             std::log(static_cast<long double>(c.n())));
}

double dim_box_packing(const Carpet& c) {
  const auto rows = static_cast<long double>(c.rows().occupied_rows.size());
  const auto total = static_cast<long double>(c.rows().total);
  return static_cast<double>(
      std::log(rows) / std::log(static_cast<long double>(c.n())) +
      std::log(total / rows) / std::log(static_cast<long double>(c.m())));
}

double dim_star(const Carpet& c) {
  const auto rows = static_cast<long double>(c.rows().occupied_rows.size());
  const auto widest = static_cast<long double>(c.rows().max_count());
  return static_cast<double>(
      std::log(rows) / std::log(static_cast<long double>(c.n())) +
      std::log(widest) / std::log(static_cast<long double>(c.m())));
}

SliceBound slice_bound(const Carpet& c, SliceKind which) {
  const double star = dim_star(c);
  if (c.degenerate() || star <= 0.0) return {0.0, true};
  const double dim =
      which == SliceKind::hausdorff ? dim_hausdorff(c) : dim_box_packing(c);
  return {std::max(0.0, dim / star * (star - 1.0)), false};
}

double prior_bound(const Carpet& c) { return std::max(dim_star(c) - 1.0, 0.0); }

double marstrand_bound(double dim) { return std::max(0.0, dim - 1.0); }

LambdaOptimum optimize_lambda(double dim_star, double dim_x) {
  if (!(dim_star > 0.0) || !(dim_x >= 0.0) || dim_x > dim_star + 1e-15 ||
      dim_star > 2.0 + 1e-15) {
    throw Error(ErrorCode::DomainError,
                "optimize_lambda needs 0 <= dim_x <= dim_star <= 2, dim_star > 0");
  }
  // The objective is the minimum of an increasing-or-flat line and a
  // decreasing line, so the maximiser is an endpoint or the crossing point.
  auto objective = [&](double lambda) {
    return std::min(lambda * (dim_star - 1.0), dim_x - lambda);
  };
  std::vector<double> candidates{0.0, 1.0};
  if (dim_star > 0.0) {
    const double crossing = dim_x / dim_star;
    if (crossing >= 0.0 && crossing <= 1.0) candidates.push_back(crossing);
  }
  LambdaOptimum best{0.0, objective(0.0)};
  for (double lambda : candidates) {
    const double value = objective(lambda);
    if (value > best.bound + 1e-15) best = {lambda, value};
  }
  const double closed_form = std::max(0.0, dim_x / dim_star * (dim_star - 1.0));
  if (std::abs(best.bound - closed_form) > 1e-9) {
    throw Error(ErrorCode::DomainError,
                "lambda optimisation disagrees with closed form");
  }
  return best;
}

DimensionReport analyze(const Carpet& c) {
  DimensionReport r;
  r.m = c.m();
  r.n = c.n();
  r.theta = static_cast<double>(c.theta());
  r.dim_h = dim_hausdorff(c);
  r.dim_bp = dim_box_packing(c);
  r.dim_star = dim_star(c);
  r.independent = independence_check(c);
  r.ahlfors_regular = c.rows().uniform();
  r.degenerate = c.degenerate();
  r.slice_bound_h = slice_bound(c, SliceKind::hausdorff).value;
  r.slice_bound_p = slice_bound(c, SliceKind::packing).value;
  r.prior_bound = prior_bound(c);
  r.marstrand_h = marstrand_bound(r.dim_h);
  r.marstrand_p = marstrand_bound(r.dim_bp);
  return r;
}

double packing_row_functional(const Carpet& c, std::span<const double> v) {
  check_row_vector(c, v);
  const long double log_m = std::log(static_cast<long double>(c.m()));
  const long double log_n = std::log(static_cast<long double>(c.n()));
  const long double theta = c.theta();
  long double row_term = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int a = c.rows().row_count.at(c.rows().occupied_rows[i]);
    row_term += v[i] * std::log(static_cast<long double>(a));
  }
  const auto rows = static_cast<long double>(v.size());
  return static_cast<double>(row_term / log_m +
                             theta * shannon_entropy(v) / log_n +
                             (1.0L - theta) * std::log(rows) / log_n);
}

double hausdorff_row_functional(const Carpet& c, std::span<const double> v) {
  check_row_vector(c, v);
  const long double log_m = std::log(static_cast<long double>(c.m()));
  const long double log_n = std::log(static_cast<long double>(c.n()));
  long double row_term = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int a = c.rows().row_count.at(c.rows().occupied_rows[i]);
    row_term += v[i] * std::log(static_cast<long double>(a));
  }
  return static_cast<double>(row_term / log_m + shannon_entropy(v) / log_n);
}

std::vector<double> packing_equality_vector(const Carpet& c) {
  std::vector<double> v;
  for (int row : c.rows().occupied_rows) {
    v.push_back(static_cast<double>(c.rows().row_count.at(row)) /
                c.rows().total);
  }
  return v;
}

std::vector<double> hausdorff_equality_vector(const Carpet& c) {
  std::vector<long double> w;
  long double sum = 0.0L;
  for (int row : c.rows().occupied_rows) {
    w.push_back(std::pow(static_cast<long double>(c.rows().row_count.at(row)),
                         c.theta()));
    sum += w.back();
  }
  std::vector<double> v;
  for (long double x : w) v.push_back(static_cast<double>(x / sum));
  return v;
}

}  // namespace carpetlab
