// carpetlab: command-line front end for the carpet library.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "carpetlab/error.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace carpetlab;
using namespace carpetlab::cli;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::AxisParallelLine:
      return 4;
    case ErrorCode::CellBudgetExceeded:
      return 5;
    case ErrorCode::AtomExhaustion:
    case ErrorCode::ZeroMassCell:
      return 6;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bedford-McMullen carpet toolkit: dimensions, slices, scenery"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string depths;
  std::string format = "json";
  std::string u0_range;
  std::string t_range;
  std::string slopes;
  double slope = 0.0;

  auto common = [&](CLI::App* sub, bool needs_carpet) {
    auto* opt = sub->add_option("--carpet", cfg.carpet_path, "carpet file: 'm n' then one 'x y' per line");
    if (needs_carpet) opt->required();
    sub->add_option("--out", cfg.out_dir, "output directory (default: stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized parts");
    sub->add_option("--depths", depths, "depth range A..B (fit uses A..B)");
    sub->add_option("--inflation", cfg.inflation, "sup-metric inflation of the line");
    sub->add_option("--steps", cfg.steps, "scenery length N");
    sub->add_option("--block", cfg.block, "block length B");
    sub->add_option("--probe-level", cfg.probe_level, "probe partition level l");
    sub->add_option("--budget", cfg.budget, "visited-cell budget of the slicer");
  };
  auto line_flags = [&](CLI::App* sub) {
    sub->add_option("--u0", cfg.line.u0, "slope exponent: |slope| = m^u0");
    sub->add_option("--t", cfg.line.t, "intercept");
    sub->add_flag("--negative", cfg.line.negative, "negative slope");
    sub->add_option("--slope", slope, "explicit slope (overrides --u0)");
  };

  auto* analyze = app.add_subcommand("analyze", "dimensions and slice bounds of a carpet");
  common(analyze, true);
  auto* slice = app.add_subcommand("slice", "slice counts and dimension estimate for one line");
  common(slice, true);
  line_flags(slice);
  auto* sweep = app.add_subcommand("sweep", "slice estimates over a grid of lines");
  common(sweep, true);
  line_flags(sweep);
  sweep->add_option("--u0-range", u0_range, "u0 axis A..B");
  sweep->add_option("--u0-steps", cfg.grid.u0_steps, "u0 grid points");
  sweep->add_option("--t-range", t_range, "intercept axis A..B");
  sweep->add_option("--t-steps", cfg.grid.t_steps, "intercept grid points");
  sweep->add_option("--slopes", slopes, "comma-separated slopes replacing the u0 axis");
  auto* scenery = app.add_subcommand("scenery", "magnification orbit and entropy bound chains");
  common(scenery, true);
  line_flags(scenery);
  scenery->add_option("--stride", cfg.stride, "snapshot every k-th step");
  auto* proptest = app.add_subcommand("proptest", "exhaustive and randomized invariant suites");
  common(proptest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.format = format == "csv" ? Format::csv : Format::json;
    if (!depths.empty()) std::tie(cfg.depth_lo, cfg.depth_hi) = parse_depth_range(depths);
    cfg.drop_head = cfg.depth_lo - 1;
    if (!u0_range.empty()) std::tie(cfg.grid.u0_lo, cfg.grid.u0_hi) = parse_real_range(u0_range);
    if (!t_range.empty()) std::tie(cfg.grid.t_lo, cfg.grid.t_hi) = parse_real_range(t_range);
    if (!slopes.empty()) cfg.grid.slopes = parse_real_list(slopes);

    CommandOutput out;
    if (*analyze) {
      cfg.command = "analyze";
      out = cmd_analyze(cfg);
    } else if (*slice) {
      cfg.command = "slice";
      if (slice->count("--slope")) cfg.line.slope = slope;
      out = cmd_slice(cfg);
    } else if (*sweep) {
      cfg.command = "sweep";
      if (sweep->count("--slope")) cfg.line.slope = slope;
      out = cmd_sweep(cfg);
    } else if (*scenery) {
      cfg.command = "scenery";
      if (scenery->count("--slope")) cfg.line.slope = slope;
      out = cmd_scenery(cfg);
    } else {
      cfg.command = "proptest";
      out = cmd_proptest(cfg);
    }
    emit(out, cfg.out_dir);
    // Suite verdicts are short; show them even when the JSON goes to a file.
    if (cfg.command == "proptest" && !cfg.out_dir.empty()) std::cout << out.stdout_text;
    if (out.exit_code != 0) std::cerr << "carpetlab: " << cfg.command << " reported failures\n";
    return out.exit_code;
  } catch (const Error& e) {
    std::cerr << "carpetlab: " << e.what();
    if (e.step()) std::cerr << " (step " << *e.step() << ")";
    std::cerr << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "carpetlab: " << e.what() << '\n';
    return 3;
  }
}
