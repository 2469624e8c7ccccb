#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "carpetlab/carpet.hpp"
#include "carpetlab/fixed_point.hpp"

namespace carpetlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxWordLength = 1'000'000;

/// Finite prefix of a one-sided sequence over {0, ..., alphabet_size - 1}.
struct SymbolWord {
  int alphabet_size = 2;
  std::vector<int> symbols;

  std::size_t size() const noexcept { return symbols.size(); }
  bool empty() const noexcept { return symbols.empty(); }
  /// Throws SymbolOutOfRange / DomainError on violated invariants.
  void validate() const;
  SymbolWord prefix(std::size_t length) const;

  bool operator==(const SymbolWord&) const = default;
};

/// Comma-separated integers, e.g. "0,1,1,0".
std::string format_word(const SymbolWord& w);
SymbolWord parse_word(std::string_view text, int alphabet_size);

/// Drops the first symbol.
SymbolWord shift(const SymbolWord& w);
/// Shifts iff u lies in [1 - theta, 1); identity otherwise.
SymbolWord shift_u(const SymbolWord& w, double u, double theta);
SymbolWord shift_u(const SymbolWord& w, Phase u, const Rotation& rotation);

/// Orbit u0, u0 + theta, u0 + 2 theta, ... of the circle rotation.
class RotationOrbit {
 public:
  RotationOrbit(Rotation rotation, Phase u0) : rotation_(rotation), u0_(u0) {}
  RotationOrbit(double theta, double u0)
      : RotationOrbit(Rotation::from_theta(theta), Phase::from_double(u0)) {}
  static RotationOrbit for_carpet(const Carpet& c, double u0);

  const Rotation& rotation() const noexcept { return rotation_; }
  Phase start() const noexcept { return u0_; }
  double theta() const noexcept { return rotation_.theta(); }

  Phase at(std::uint64_t i) const { return rotation_.advance(u0_, i); }
  bool returns_at(std::uint64_t i) const { return rotation_.returns(at(i)); }
  /// Some phase at index <= k lies within `tol` of a window endpoint.
  bool boundary_flag(std::uint64_t k, double tol = 1e-15) const;

  /// |{0 <= i <= k : frac(u0 + i theta) in [1 - theta, 1)}|.
  std::uint64_t return_count(std::uint64_t k) const;
  /// return_count(k) for k = 0..k_max in one pass.
  std::vector<std::uint64_t> return_counts(std::uint64_t k_max) const;

 private:
  Rotation rotation_;
  Phase u0_;
};

struct DiscrepancyScan {
  /// sup |R(k,u) - floor(theta k)| over the scanned (u, k).
  std::int64_t constant = 0;
  /// sup |R(k,u) - theta k|.
  double max_deviation = 0.0;
  std::uint64_t k_max = 0;
  std::size_t grid_points = 0;
};

/// Scans k = 0..k_max over the grid u0 = i / grid_points.
DiscrepancyScan scan_return_discrepancy(const Rotation& rotation,
                                        std::uint64_t k_max,
                                        std::size_t grid_points);

/// Multiplicative diameter constant implied by an additive return constant:
/// widths m^-R and heights n^-k differ by at most a factor m^(C+1).
double diameter_constant(int m, std::int64_t return_constant);

/// A cell D_{m^p} x D_{n^k} addressed by its base-m and base-n digit words.
struct ApproxSquare {
  int m = 2;
  int n = 2;
  std::vector<int> x_digits;
  std::vector<int> y_digits;

  int x_depth() const noexcept { return static_cast<int>(x_digits.size()); }
  int y_depth() const noexcept { return static_cast<int>(y_digits.size()); }
  std::uint64_t x_index() const;
  std::uint64_t y_index() const;
  long double width() const;
  long double height() const;
  long double x0() const;
  long double y0() const;
  long double diameter() const;
  bool contains(double x, double y) const;
};

/// Truncates (x_word, y_word) to lengths (R(k, u0), k).
ApproxSquare approx_square_of(const SymbolWord& x_word, const SymbolWord& y_word,
                              std::uint64_t k, const RotationOrbit& orbit);

/// Bracket [prod a(w_k), 5 prod a(w_k)] on the m^-q covering number of A(w).
std::pair<BigInt, BigInt> cylinder_cover_count(const Carpet& c,
                                               const SymbolWord& omega_prefix,
                                               std::size_t q);

struct RationalInterval {
  Rational lo;
  Rational hi;  // exclusive

  bool contains(const RationalInterval& other) const;
  /// "[p/q,p/q)"
  std::string to_string() const;
};

/// Closed form of the base coding map on all extensions of w.
RationalInterval coding_interval(const SymbolWord& w, int base);
std::string rational_to_string(const Rational& r);

/// Allowed horizontal digit sets D_{y_{i+R(k,u)}} for i = 1..floor((1-theta)k/theta) - trim.
/// trim < 0 selects the default ceil(C / theta) with C from a short scan.
std::vector<std::vector<int>> fiber_constraints(const Carpet& c,
                                                const SymbolWord& y_word,
                                                std::uint64_t k,
                                                const RotationOrbit& orbit,
                                                int trim = -1);

/// ceil(C / theta) using a k <= 1000, 64-point discrepancy scan.
int default_fiber_trim(const Rotation& rotation);

}  // namespace carpetlab
