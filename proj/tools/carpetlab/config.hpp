#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carpetlab::cli {

enum class Format { json, csv };

struct LineParams {
  double u0 = 0.5;
  double t = 0.0;
  bool negative = false;
  std::optional<double> slope;  // overrides u0 when given
};

struct SweepGrid {
  double u0_lo = 0.05;
  double u0_hi = 0.95;
  int u0_steps = 10;
  double t_lo = 0.0;
  double t_hi = 0.5;
  int t_steps = 10;
  std::vector<double> slopes;  // explicit slopes replace the u0 axis
};

/// Everything the commands need; filled from the command line.
struct RunConfig {
  std::string command;
  std::string carpet_path;
  std::string out_dir;  // empty: print to stdout
  Format format = Format::json;
  std::uint64_t seed = 20240601;
  int depth_lo = 4;
  int depth_hi = 12;
  double inflation = 0.0;
  std::size_t steps = 1000;
  int block = 6;
  int probe_level = 4;
  std::uint64_t budget = 100'000'000;
  int drop_head = 3;
  std::size_t stride = 1;
  LineParams line;
  SweepGrid grid;
};

/// "A..B" -> (A, B).
std::pair<int, int> parse_depth_range(const std::string& text);
/// "A..B" with reals.
std::pair<double, double> parse_real_range(const std::string& text);
/// Comma-separated reals.
std::vector<double> parse_real_list(const std::string& text);

/// Worker count: hardware concurrency capped by CARPETLAB_THREADS.
unsigned worker_count();

}  // namespace carpetlab::cli
