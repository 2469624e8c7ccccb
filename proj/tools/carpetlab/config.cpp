#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "carpetlab/error.hpp"

namespace carpetlab::cli {

namespace {

std::pair<std::string, std::string> split_range(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) {
    throw Error(ErrorCode::DomainError, "expected a range A..B, got '" + text + "'");
  }
  return {text.substr(0, pos), text.substr(pos + 2)};
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::DomainError, "not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::DomainError, "not an integer: '" + s + "'");
  }
  return v;
}

}  // namespace

std::pair<int, int> parse_depth_range(const std::string& text) {
  const auto [a, b] = split_range(text);
  const int lo = to_int(a);
  const int hi = to_int(b);
  if (lo < 1 || hi < lo) throw Error(ErrorCode::DomainError, "depth range must satisfy 1 <= A <= B");
  return {lo, hi};
}

std::pair<double, double> parse_real_range(const std::string& text) {
  const auto [a, b] = split_range(text);
  return {to_real(a), to_real(b)};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_real(item));
  if (out.empty()) throw Error(ErrorCode::DomainError, "empty list");
  return out;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CARPETLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

}  // namespace carpetlab::cli
