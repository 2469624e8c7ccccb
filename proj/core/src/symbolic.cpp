#include "carpetlab/symbolic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "carpetlab/error.hpp"

namespace carpetlab {

void SymbolWord::validate() const {
  if (alphabet_size < 1) {
    throw Error(ErrorCode::DomainError, "alphabet size must be positive");
  }
  if (symbols.size() > kMaxWordLength) {
    throw Error(ErrorCode::DomainError, "word longer than 10^6 symbols");
  }
  for (int s : symbols) {
    if (s < 0 || s >= alphabet_size) {
      throw Error(ErrorCode::SymbolOutOfRange,
                  "symbol " + std::to_string(s) + " outside alphabet of size " +
                      std::to_string(alphabet_size));
    }
  }
}

SymbolWord SymbolWord::prefix(std::size_t length) const {
  if (length > symbols.size()) {
    throw Error(ErrorCode::WordTooShort,
                "prefix of length " + std::to_string(length) +
                    " from word of length " + std::to_string(symbols.size()));
  }
  return {alphabet_size, {symbols.begin(), symbols.begin() + length}};
}

std::string format_word(const SymbolWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.symbols.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w.symbols[i]);
  }
  return out;
}

SymbolWord parse_word(std::string_view text, int alphabet_size) {
  SymbolWord w{alphabet_size, {}};
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_space();
  if (pos == text.size()) return w;
  while (true) {
    skip_space();
    int value = 0;
    const auto [end, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{}) {
      throw Error(ErrorCode::ParseError,
                  "bad symbol at offset " + std::to_string(pos));
    }
    w.symbols.push_back(value);
    pos = static_cast<std::size_t>(end - text.data());
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw Error(ErrorCode::ParseError,
                  "expected ',' at offset " + std::to_string(pos));
    }
    ++pos;
  }
  w.validate();
  return w;
}

SymbolWord shift(const SymbolWord& w) {
  if (w.empty()) throw Error(ErrorCode::EmptyWord, "cannot shift an empty word");
  return {w.alphabet_size, {w.symbols.begin() + 1, w.symbols.end()}};
}

SymbolWord shift_u(const SymbolWord& w, double u, double theta) {
  if (w.empty()) throw Error(ErrorCode::EmptyWord, "cannot shift an empty word");
  return (u >= 1.0 - theta && u < 1.0) ? shift(w) : w;
}

SymbolWord shift_u(const SymbolWord& w, Phase u, const Rotation& rotation) {
  if (w.empty()) throw Error(ErrorCode::EmptyWord, "cannot shift an empty word");
  return rotation.returns(u) ? shift(w) : w;
}

RotationOrbit RotationOrbit::for_carpet(const Carpet& c, double u0) {
  return RotationOrbit(Rotation::from_exponents(c.m(), c.n()),
                       Phase::from_double(u0));
}

bool RotationOrbit::boundary_flag(std::uint64_t k, double tol) const {
  Phase u = u0_;
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (rotation_.near_boundary(u, tol)) return true;
    u = rotation_.advance(u);
  }
  return false;
}

std::uint64_t RotationOrbit::return_count(std::uint64_t k) const {
  std::uint64_t count = 0;
  Phase u = u0_;
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (rotation_.returns(u)) ++count;
    u = rotation_.advance(u);
  }
  return count;
}

std::vector<std::uint64_t> RotationOrbit::return_counts(std::uint64_t k_max) const {
  std::vector<std::uint64_t> out;
  out.reserve(k_max + 1);
  std::uint64_t count = 0;
  Phase u = u0_;
  for (std::uint64_t i = 0; i <= k_max; ++i) {
    if (rotation_.returns(u)) ++count;
    out.push_back(count);
    u = rotation_.advance(u);
  }
  return out;
}

DiscrepancyScan scan_return_discrepancy(const Rotation& rotation,
                                        std::uint64_t k_max,
                                        std::size_t grid_points) {
  if (grid_points == 0) {
    throw Error(ErrorCode::DomainError, "discrepancy scan needs grid points");
  }
  // floor(theta k) as the number of integer crossings of 0, theta, ..., k theta.
  std::vector<std::uint64_t> floors(k_max + 1, 0);
  {
    Phase acc;
    std::uint64_t crossings = 0;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
      if (rotation.returns(acc)) ++crossings;
      acc = rotation.advance(acc);
      floors[k] = crossings;
    }
  }

  DiscrepancyScan scan;
  scan.k_max = k_max;
  scan.grid_points = grid_points;
  const long double theta = rotation.theta();
  for (std::size_t g = 0; g < grid_points; ++g) {
    Phase u = Phase::from_double(static_cast<long double>(g) /
                                 static_cast<long double>(grid_points));
    std::int64_t count = 0;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
      if (rotation.returns(u)) ++count;
      u = rotation.advance(u);
      const std::int64_t gap = count - static_cast<std::int64_t>(floors[k]);
      scan.constant = std::max(scan.constant, gap < 0 ? -gap : gap);
      const double dev = static_cast<double>(
          std::fabs(static_cast<long double>(count) - theta * static_cast<long double>(k)));
      scan.max_deviation = std::max(scan.max_deviation, dev);
    }
  }
  return scan;
}

double diameter_constant(int m, std::int64_t return_constant) {
  const double ratio = std::pow(static_cast<double>(m),
                                static_cast<double>(return_constant + 1));
  return std::sqrt(1.0 + ratio * ratio);
}

std::uint64_t ApproxSquare::x_index() const {
  checked_pow(m, x_depth());
  std::uint64_t v = 0;
  for (int d : x_digits) v = v * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(d);
  return v;
}

std::uint64_t ApproxSquare::y_index() const {
  checked_pow(n, y_depth());
  std::uint64_t v = 0;
  for (int d : y_digits) v = v * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d);
  return v;
}

long double ApproxSquare::width() const {
  return std::pow(static_cast<long double>(m), -static_cast<long double>(x_depth()));
}

long double ApproxSquare::height() const {
  return std::pow(static_cast<long double>(n), -static_cast<long double>(y_depth()));
}

long double ApproxSquare::x0() const {
  return static_cast<long double>(x_index()) * width();
}

long double ApproxSquare::y0() const {
  return static_cast<long double>(y_index()) * height();
}

long double ApproxSquare::diameter() const {
  return std::hypot(width(), height());
}

bool ApproxSquare::contains(double x, double y) const {
  return scaled_floor(x, checked_pow(m, x_depth())) == x_index() &&
         scaled_floor(y, checked_pow(n, y_depth())) == y_index();
}

ApproxSquare approx_square_of(const SymbolWord& x_word, const SymbolWord& y_word,
                              std::uint64_t k, const RotationOrbit& orbit) {
  const std::uint64_t p = orbit.return_count(k);
  if (x_word.size() < p || y_word.size() < k) {
    throw Error(ErrorCode::WordTooShort,
                "approximate square at depth " + std::to_string(k) + " needs " +
                    std::to_string(p) + " x digits and " + std::to_string(k) +
                    " y digits");
  }
  x_word.validate();
  y_word.validate();
  ApproxSquare sq;
  sq.m = x_word.alphabet_size;
  sq.n = y_word.alphabet_size;
  sq.x_digits.assign(x_word.symbols.begin(), x_word.symbols.begin() + static_cast<long>(p));
  sq.y_digits.assign(y_word.symbols.begin(), y_word.symbols.begin() + static_cast<long>(k));
  return sq;
}

std::pair<BigInt, BigInt> cylinder_cover_count(const Carpet& c,
                                               const SymbolWord& omega_prefix,
                                               std::size_t q) {
  if (omega_prefix.size() < q) {
    throw Error(ErrorCode::WordTooShort,
                "cylinder cover needs " + std::to_string(q) + " symbols");
  }
  BigInt lower = 1;
  for (std::size_t k = 0; k < q; ++k) {
    const int row = omega_prefix.symbols[k];
    auto it = c.rows().row_count.find(row);
    if (it == c.rows().row_count.end()) {
      throw Error(ErrorCode::UnoccupiedRowSymbol,
                  "row " + std::to_string(row) + " carries no digits");
    }
    lower *= it->second;
  }
  return {lower, lower * 5};
}

bool RationalInterval::contains(const RationalInterval& other) const {
  return lo <= other.lo && other.hi <= hi;
}

std::string rational_to_string(const Rational& r) {
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

std::string RationalInterval::to_string() const {
  return "[" + rational_to_string(lo) + "," + rational_to_string(hi) + ")";
}

RationalInterval coding_interval(const SymbolWord& w, int base) {
  if (base < 2) throw Error(ErrorCode::DomainError, "coding base must be >= 2");
  for (int s : w.symbols) {
    if (s < 0 || s >= base) {
      throw Error(ErrorCode::SymbolOutOfRange,
                  "symbol " + std::to_string(s) + " not a base-" +
                      std::to_string(base) + " digit");
    }
  }
  BigInt numerator = 0;
  BigInt scale = 1;
  for (int s : w.symbols) {
    numerator = numerator * base + s;
    scale *= base;
  }
  return {Rational(numerator, scale), Rational(numerator + 1, scale)};
}

int default_fiber_trim(const Rotation& rotation) {
  const DiscrepancyScan scan = scan_return_discrepancy(rotation, 1000, 64);
  return static_cast<int>(std::ceil(static_cast<double>(scan.constant) / rotation.theta()));
}

std::vector<std::vector<int>> fiber_constraints(const Carpet& c,
                                                const SymbolWord& y_word,
                                                std::uint64_t k,
                                                const RotationOrbit& orbit,
                                                int trim) {
  const long double theta = orbit.theta();
  const long double span = (1.0L - theta) * static_cast<long double>(k) / theta;
  const auto full = static_cast<std::uint64_t>(std::floor(span));
  const std::uint64_t p = orbit.return_count(k);
  const std::uint64_t needed = p + static_cast<std::uint64_t>(std::ceil(span));
  if (y_word.size() < needed) {
    throw Error(ErrorCode::WordTooShort,
                "fiber constraints need " + std::to_string(needed) + " y digits");
  }
  if (trim < 0) trim = default_fiber_trim(orbit.rotation());
  const std::uint64_t count =
      full > static_cast<std::uint64_t>(trim) ? full - static_cast<std::uint64_t>(trim) : 0;

  std::vector<std::vector<int>> out;
  out.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i) {
    out.push_back(c.row_digits(y_word.symbols[i + p - 1]));
  }
  return out;
}

}  // namespace carpetlab
