#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "carpetlab/carpet_io.hpp"
#include "carpetlab/error.hpp"
#include "carpetlab/report_json.hpp"
#include "carpetlab/scenery.hpp"
#include "carpetlab/slicer.hpp"

namespace carpetlab::cli {

namespace {

using nlohmann::ordered_json;

Line make_line(const Carpet& c, const LineParams& p) {
  if (p.slope) return Line::from_slope(c.m(), *p.slope, p.t);
  return Line::from_exponent(c.m(), p.u0, p.t, p.negative);
}

SliceOptions slice_options(const RunConfig& cfg) {
  SliceOptions o;
  o.inflation = cfg.inflation;
  o.budget = cfg.budget;
  return o;
}

void check_depths(const RunConfig& cfg) {
  if (cfg.depth_lo < 1 || cfg.depth_hi < cfg.depth_lo) {
    throw Error(ErrorCode::DomainError, "--depths must satisfy 1 <= A <= B");
  }
}

// Counts for depths 1..B; the fit starts at A (dropping depths 1..A-1).
SliceEstimate estimate_line(const Carpet& c, const Line& line, const RunConfig& cfg) {
  const std::vector<DepthCount> counts =
      slice_counts(c, line, 1, cfg.depth_hi, slice_options(cfg));
  return estimate_slice_dimension(counts, cfg.depth_lo - 1, c);
}

std::string analyze_csv(const DimensionReport& r) {
  std::string out =
      "schema,m,n,theta,dim_h,dim_bp,dim_star,independent,ahlfors_regular,degenerate,"
      "slice_bound_h,slice_bound_p,prior_bound,marstrand_h,marstrand_p\n";
  out += std::string(kSchema) + "," + std::to_string(r.m) + "," + std::to_string(r.n) + "," +
         format_double(r.theta) + "," + format_double(r.dim_h) + "," + format_double(r.dim_bp) +
         "," + format_double(r.dim_star) + "," + (r.independent ? "true" : "false") + "," +
         (r.ahlfors_regular ? "true" : "false") + "," + (r.degenerate ? "true" : "false") + "," +
         format_double(r.slice_bound_h) + "," + format_double(r.slice_bound_p) + "," +
         format_double(r.prior_bound) + "," + format_double(r.marstrand_h) + "," +
         format_double(r.marstrand_p) + "\n";
  return out;
}

struct SweepRow {
  double u0 = 0.0;
  double slope = 0.0;
  double t = 0.0;
  SliceEstimate est;
  std::string error;
};

}  // namespace

CommandOutput cmd_analyze(const RunConfig& cfg) {
  const Carpet c = load_carpet(cfg.carpet_path);
  const DimensionReport r = analyze(c);
  CommandOutput out;
  if (cfg.format == Format::csv) {
    out.stdout_text = analyze_csv(r);
    out.files.push_back({"analyze.csv", out.stdout_text});
  } else {
    out.stdout_text = to_json(r) + "\n";
    out.files.push_back({"analyze.json", out.stdout_text});
  }
  return out;
}

CommandOutput cmd_slice(const RunConfig& cfg) {
  check_depths(cfg);
  const Carpet c = load_carpet(cfg.carpet_path);
  const Line line = make_line(c, cfg.line);
  const SliceEstimate est = estimate_line(c, line, cfg);
  CommandOutput out;
  const std::string csv = counts_csv(est.counts);
  const std::string json = to_json(est) + "\n";
  out.files.push_back({"slice_counts.csv", csv});
  out.files.push_back({"slice_estimate.json", json});
  out.stdout_text = cfg.format == Format::csv ? csv : json;
  return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg) {
  check_depths(cfg);
  const Carpet c = load_carpet(cfg.carpet_path);
  const SweepGrid& g = cfg.grid;
  auto axis = [](double lo, double hi, int steps) {
    std::vector<double> v;
    if (steps < 1) throw Error(ErrorCode::DomainError, "grid axes need at least one step");
    for (int i = 0; i < steps; ++i) v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return v;
  };
  const std::vector<double> ts = axis(g.t_lo, g.t_hi, g.t_steps);
  std::vector<SweepRow> rows;
  if (!g.slopes.empty()) {
    for (double s : g.slopes) {
      for (double t : ts) rows.push_back({std::nan(""), s, t, {}, {}});
    }
  } else {
    for (double u : axis(g.u0_lo, g.u0_hi, g.u0_steps)) {
      for (double t : ts) rows.push_back({u, std::nan(""), t, {}, {}});
    }
  }

  auto work = [&](SweepRow& row) {
    try {
      LineParams p = cfg.line;
      p.t = row.t;
      if (!g.slopes.empty()) {
        p.slope = row.slope;
      } else {
        p.slope.reset();
        p.u0 = row.u0;
      }
      const Line line = make_line(c, p);
      row.u0 = line.u0();
      row.slope = line.slope_value();
      row.est = estimate_line(c, line, cfg);
    } catch (const Error& e) {
      row.error = std::string(to_string(e.code()));
    }
  };
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) work(rows[i]);
    });
  }
  for (auto& th : pool) th.join();

  const BoundComparison b = bound_comparison(c);
  CommandOutput out;
  if (cfg.format == Format::json) {
    ordered_json arr = ordered_json::array();
    for (const SweepRow& r : rows) {
      ordered_json j;
      j["u0"] = r.u0;
      j["line_slope"] = r.slope;
      j["t"] = r.t;
      if (r.error.empty()) {
        j["slope"] = r.est.slope;
        j["stderr"] = r.est.stderr_slope;
        j["empty"] = r.est.empty;
      }
      j["error"] = r.error;
      arr.push_back(j);
    }
    ordered_json doc;
    doc["schema"] = kSchema;
    doc["bounds"] = {{"theorem_h", b.theorem_h}, {"theorem_p", b.theorem_p}, {"prior", b.prior},
                     {"marstrand_h", b.marstrand_h}, {"marstrand_p", b.marstrand_p}};
    doc["rows"] = arr;
    out.stdout_text = doc.dump(2) + "\n";
    out.files.push_back({"sweep.json", out.stdout_text});
    return out;
  }
  std::string csv =
      "u0,line_slope,t,slope,stderr,theorem_h,theorem_p,prior,marstrand_h,marstrand_p,empty,error\n";
  for (const SweepRow& r : rows) {
    const bool ok = r.error.empty();
    csv += (std::isnan(r.u0) ? std::string() : format_double(r.u0)) + "," +
           (std::isnan(r.slope) ? std::string() : format_double(r.slope)) + "," +
           format_double(r.t) + "," + (ok ? format_double(r.est.slope) : "") + "," +
           (ok ? format_double(r.est.stderr_slope) : "") + "," + format_double(b.theorem_h) +
           "," + format_double(b.theorem_p) + "," + format_double(b.prior) + "," +
           format_double(b.marstrand_h) + "," + format_double(b.marstrand_p) + "," +
           (ok ? (r.est.empty ? "true" : "false") : "") + "," + r.error + "\n";
  }
  out.stdout_text = csv;
  out.files.push_back({"sweep.csv", csv});
  return out;
}

CommandOutput cmd_scenery(const RunConfig& cfg) {
  if (cfg.steps > kMaxSceneryLength) {
    throw Error(ErrorCode::DomainError, "--steps is limited to 100000");
  }
  const Carpet c = load_carpet(cfg.carpet_path);
  const Line line = make_line(c, cfg.line);
  const int depth = cfg.depth_hi;
  const DiscreteMeasure mu0 = frostman_approx(c, line, depth, slice_options(cfg));

  std::mt19937_64 rng(cfg.seed);
  const auto pick = std::uniform_int_distribution<std::size_t>(0, mu0.size() - 1)(rng);
  const Atom z0 = mu0.atoms()[pick];

  // omega_0: the y-digits of z_0's cover cell, then seeded occupied rows.
  SymbolWord omega{c.n(), digits_of(z0.y, c.n(), depth)};
  const auto& rows = c.rows().occupied_rows;
  std::uniform_int_distribution<std::size_t> row_pick(0, rows.size() - 1);
  const std::size_t needed = cfg.steps + static_cast<std::size_t>(cfg.block) + 1;
  while (omega.size() < needed) omega.symbols.push_back(rows[row_pick(rng)]);

  const Rotation rotation = Rotation::from_exponents(c.m(), c.n());
  SceneryState s0;
  s0.mu = mu0;
  s0.x = z0.x;
  s0.y = z0.y;
  s0.u = Phase::from_double(line.u0());
  s0.omega = omega;
  s0.m = c.m();
  s0.n = c.n();
  SceneryOptions opts;
  opts.stride = cfg.stride;
  opts.probe_level = cfg.probe_level;
  const SceneryRun run = run_scenery(s0, cfg.steps, rotation, opts);

  const EmpiricalTriple triple =
      empirical_measures_linear(omega, std::max<std::size_t>(cfg.steps, 1), static_cast<double>(c.theta()), cfg.block);
  BoundChainReport chain = bound_chain_report(c, triple, cfg.block);
  const int level_hi = std::max(3, depth - 1);
  chain.lhs_gamma_proxy = mu0.size() > 1 ? finite_scale_dimension(mu0, c.n(), 2, level_hi) : 0.0;

  const int horizon = depth - cfg.probe_level;
  double sum_all = 0.0;
  double sum_resolved = 0.0;
  std::size_t resolved = 0;
  std::string orbit;
  for (const ScenerySnapshot& snap : run.snapshots) {
    orbit += to_json_line(snap) + "\n";
    sum_all += snap.probe_entropy;
    if (static_cast<long long>(snap.step) <= horizon) {
      sum_resolved += snap.probe_entropy;
      ++resolved;
    }
  }

  ordered_json summary;
  summary["schema"] = kSchema;
  summary["steps"] = cfg.steps;
  summary["initial_atoms"] = mu0.size();
  summary["z0"] = {z0.x, z0.y};
  summary["u0"] = line.u0();
  summary["omega_from_cover_depth"] = depth;
  summary["omega_extension"] = "seeded uniform occupied rows";
  summary["seed"] = cfg.seed;
  summary["mean_probe_entropy"] = sum_all / static_cast<double>(run.snapshots.size());
  summary["resolved_steps"] = horizon;
  summary["resolved_mean_probe_entropy"] =
      resolved ? sum_resolved / static_cast<double>(resolved) : 0.0;
  summary["phase_star_discrepancy"] = star_discrepancy(run.phases);
  summary["tv_residual"] = triple.tv_residual;
  summary["hard_assertions_ok"] = chain.hard_assertions_ok;
  summary["final_atoms"] = run.final_state.mu.size();

  CommandOutput out;
  out.files.push_back({"orbit.jsonl", orbit});
  out.files.push_back({"empirical.json", to_json(triple) + "\n"});
  out.files.push_back({"bound_chain.json", to_json(chain) + "\n"});
  out.files.push_back({"scenery_summary.json", summary.dump(2) + "\n"});
  out.stdout_text = summary.dump(2) + "\n" + to_json(chain) + "\n";
  return out;
}

}  // namespace carpetlab::cli
