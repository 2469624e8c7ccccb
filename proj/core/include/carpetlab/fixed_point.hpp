#pragma once

#include <cstdint>

namespace carpetlab {

__extension__ typedef unsigned __int128 uint128;

/// A point of the circle R/Z stored as a 128-bit binary fraction. Addition
/// wraps modulo 2^128, which is exactly reduction modulo 1.
class Phase {
 public:
  constexpr Phase() = default;
  static Phase from_double(long double u);
  static constexpr Phase from_raw(uint128 raw) { return Phase(raw); }

  constexpr uint128 raw() const { return raw_; }
  double value() const;

  friend constexpr Phase operator+(Phase a, Phase b) {
    return Phase(a.raw_ + b.raw_);
  }
  friend constexpr bool operator==(Phase a, Phase b) = default;

 private:
  constexpr explicit Phase(uint128 raw) : raw_(raw) {}
  uint128 raw_ = 0;
};

/// Rotation of the circle by theta in (0, 1]. theta = 1 is the identity
/// rotation used for m == n carpets; every phase then counts as a return.
class Rotation {
 public:
  static Rotation from_theta(long double theta);
  /// theta = log n / log m evaluated with 50 significant digits, m >= n >= 2.
  static Rotation from_exponents(int m, int n);

  double theta() const noexcept { return theta_; }
  Phase step() const noexcept { return Phase::from_raw(step_); }

  Phase advance(Phase u, std::uint64_t times = 1) const;
  /// u in [1 - theta, 1): the next step crosses an integer.
  bool returns(Phase u) const;
  /// u within `tol` of 0 or of 1 - theta.
  bool near_boundary(Phase u, double tol = 1e-15) const;

 private:
  uint128 step_ = 0;
  double theta_ = 0.0;
  bool identity_ = false;
};

/// floor(x * scale) for x in [0, 1), computed exactly.
std::uint64_t scaled_floor(double x, std::uint64_t scale);
/// frac(x * scale) for x in [0, 1), with a single final rounding; never 1.0.
double scaled_frac(double x, std::uint64_t scale);
/// base^exp, throwing Error(Overflow) beyond 2^63.
std::uint64_t checked_pow(int base, int exp);

}  // namespace carpetlab
