#include "carpetlab/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "carpetlab/error.hpp"

namespace carpetlab {

namespace {

namespace mp = boost::multiprecision;

// Binary fraction of a value in [0, 1) with 64 significant bits.
uint128 to_fixed(long double u) {
  if (u <= 0.0L) return 0;
  int e = 0;
  const long double f = std::frexp(u, &e);  // u = f * 2^e, e <= 0
  const auto mant = static_cast<std::uint64_t>(std::ldexp(f, 64));
  const int shift = 64 + e;  // raw = mant * 2^(64 + e)
  if (shift >= 0) return static_cast<uint128>(mant) << shift;
  if (-shift >= 64) return 0;
  return static_cast<uint128>(mant >> -shift);
}

constexpr uint128 kHalfTurn = static_cast<uint128>(1) << 127;

double fixed_distance(uint128 a, uint128 b) {
  uint128 d = a - b;
  if (d > kHalfTurn) d = b - a;
  return std::ldexp(static_cast<double>(d >> 64), -64);
}

}  // namespace

Phase Phase::from_double(long double u) {
  u -= std::floor(u);
  if (u >= 1.0L) u = 0.0L;
  return Phase(to_fixed(u));
}

double Phase::value() const {
  return std::ldexp(static_cast<double>(raw_ >> 75), -53);
}

Rotation Rotation::from_theta(long double theta) {
  if (!(theta > 0.0L) || theta > 1.0L) {
    throw Error(ErrorCode::DomainError, "rotation angle must lie in (0, 1]");
  }
  Rotation r;
  r.theta_ = static_cast<double>(theta);
  if (theta == 1.0L) {
    r.identity_ = true;
  } else {
    r.step_ = to_fixed(theta);
  }
  return r;
}

Rotation Rotation::from_exponents(int m, int n) {
  if (m < 2 || n < 2 || n > m) {
    throw Error(ErrorCode::DomainError, "need m >= n >= 2");
  }
  if (m == n) return from_theta(1.0L);
  using Float = mp::cpp_bin_float_50;
  Float theta = mp::log(Float(n)) / mp::log(Float(m));
  // 128 fractional bits: floor(theta * 2^128).
  mp::cpp_int scaled(mp::ldexp(theta, 128));
  const auto hi = static_cast<std::uint64_t>(scaled >> 64);
  const auto lo = static_cast<std::uint64_t>(scaled & mp::cpp_int(
                                                 std::numeric_limits<std::uint64_t>::max()));
  Rotation r;
  r.step_ = (static_cast<uint128>(hi) << 64) | lo;
  r.theta_ = static_cast<double>(theta);
  return r;
}

Phase Rotation::advance(Phase u, std::uint64_t times) const {
  if (identity_) return u;
  return Phase::from_raw(u.raw() + step_ * static_cast<uint128>(times));
}

bool Rotation::returns(Phase u) const {
  if (identity_) return true;
  // u >= 1 - theta  <=>  u + theta wraps past 1.
  return u.raw() + step_ < u.raw();
}

bool Rotation::near_boundary(Phase u, double tol) const {
  if (fixed_distance(u.raw(), 0) < tol) return true;
  if (identity_) return false;
  return fixed_distance(u.raw(), static_cast<uint128>(0) - step_) < tol;
}

std::uint64_t scaled_floor(double x, std::uint64_t scale) {
  if (!(x > 0.0)) return 0;
  int e = 0;
  const double f = std::frexp(x, &e);
  const auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  const uint128 product = static_cast<uint128>(mant) * scale;
  const int shift = 53 - e;
  if (shift >= 128) return 0;
  return static_cast<std::uint64_t>(product >> shift);
}

double scaled_frac(double x, std::uint64_t scale) {
  if (!(x > 0.0)) return 0.0;
  int e = 0;
  const double f = std::frexp(x, &e);
  const auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));
  const uint128 product = static_cast<uint128>(mant) * scale;
  const int shift = 53 - e;
  uint128 rest = product;
  if (shift < 128) rest &= (static_cast<uint128>(1) << shift) - 1;
  const double value =
      static_cast<double>(std::ldexp(static_cast<long double>(rest), -shift));
  return value >= 1.0 ? std::nextafter(1.0, 0.0) : value;
}

std::uint64_t checked_pow(int base, int exp) {
  if (base < 1 || exp < 0) {
    throw Error(ErrorCode::DomainError, "checked_pow needs base >= 1, exp >= 0");
  }
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (std::uint64_t{1} << 63) / static_cast<std::uint64_t>(base)) {
      throw Error(ErrorCode::Overflow,
                  std::to_string(base) + "^" + std::to_string(exp) +
                      " exceeds 64-bit cell arithmetic");
    }
    out *= static_cast<std::uint64_t>(base);
  }
  return out;
}

}  // namespace carpetlab
