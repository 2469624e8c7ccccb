#include "carpetlab/report_json.hpp"

#include <cstdio>

#include <json.hpp>

namespace carpetlab {

namespace {

using nlohmann::ordered_json;

ordered_json block_tables(const BlockMeasure& b) {
  ordered_json out = ordered_json::array();
  for (const auto& table : b.tables) {
    ordered_json t = ordered_json::object();
    for (const auto& [code, w] : table) t[std::to_string(code)] = w;
    out.push_back(std::move(t));
  }
  return out;
}

ordered_json window(const BlockMeasure& b, int alphabet) {
  ordered_json w;
  w["first"] = b.first;
  w["last"] = b.last;
  w["empty_window"] = b.empty_window;
  w["marginal"] = b.marginal(alphabet);
  w["blocks"] = block_tables(b);
  return w;
}

}  // namespace

std::string to_json(const DimensionReport& r) {
  ordered_json j;
  j["schema"] = kSchema;
  j["m"] = r.m;
  j["n"] = r.n;
  j["theta"] = r.theta;
  j["dim_h"] = r.dim_h;
  j["dim_bp"] = r.dim_bp;
  j["dim_star"] = r.dim_star;
  j["independent"] = r.independent;
  j["ahlfors_regular"] = r.ahlfors_regular;
  j["degenerate"] = r.degenerate;
  j["hypothesis_met"] = r.independent;
  j["slice_bound_h"] = r.slice_bound_h;
  j["slice_bound_p"] = r.slice_bound_p;
  j["prior_bound"] = r.prior_bound;
  j["marstrand_h"] = r.marstrand_h;
  j["marstrand_p"] = r.marstrand_p;
  return j.dump(2);
}

std::string to_json(const SliceEstimate& e) {
  ordered_json j;
  j["schema"] = kSchema;
  j["slope"] = e.slope;
  j["raw_slope"] = e.raw_slope;
  j["stderr"] = e.stderr_slope;
  j["depths"] = {e.depth_lo, e.depth_hi};
  j["empty"] = e.empty;
  ordered_json counts = ordered_json::array();
  for (const DepthCount& d : e.counts) counts.push_back({{"k", d.k}, {"N_k", d.count}});
  j["counts"] = counts;
  j["bounds"] = {{"theorem_h", e.bounds.theorem_h},
                 {"theorem_p", e.bounds.theorem_p},
                 {"prior", e.bounds.prior},
                 {"marstrand_h", e.bounds.marstrand_h},
                 {"marstrand_p", e.bounds.marstrand_p}};
  j["hypothesis_met"] = e.bounds.hypothesis_met;
  j["exceeds_theorem_p"] = e.slope > e.bounds.theorem_p;
  return j.dump(2);
}

std::string to_json(const EmpiricalTriple& t) {
  ordered_json j;
  j["schema"] = kSchema;
  j["window"] = t.window;
  j["parameter"] = t.parameter;
  if (t.window == "exponential") {
    j["window_reading"] = "nu_k over shifts 1..floor(theta^-(k-1)), eta_k up to floor(theta^-k)";
  }
  j["alphabet_size"] = t.alphabet_size;
  j["block"] = t.block;
  j["theta"] = t.theta;
  j["nu"] = window(t.nu, t.alphabet_size);
  j["eta"] = window(t.eta, t.alphabet_size);
  j["rho"] = window(t.rho, t.alphabet_size);
  j["tv_residual"] = t.tv_residual;
  return j.dump(2);
}

std::string to_json(const BoundChainReport& r) {
  ordered_json j;
  j["schema"] = kSchema;
  j["lhs_gamma_proxy"] = r.lhs_gamma_proxy;
  j["rhs_keyprop2"] = r.rhs_keyprop2;
  j["dim_p"] = r.dim_bp;
  j["dim_h"] = r.dim_h;
  j["block"] = r.block;
  j["h_est"] = r.h_est;
  j["rate_curve"] = r.rate_curve;
  j["rate_monotone"] = r.rate_monotone;
  j["entropy_gap"] = r.entropy_gap;
  j["sum_nu_log_a"] = r.chains.sum_nu_log_a;
  j["entropy_nu"] = r.chains.entropy_nu;
  j["entropy_eta"] = r.chains.entropy_eta;
  j["entropy_mix"] = r.chains.entropy_mix;
  j["rhs_packing_form"] = r.chains.rhs_packing_form;
  j["rhs_hausdorff_form"] = r.chains.rhs_hausdorff_form;
  j["slack_gibbs_packing"] = r.chains.slack_gibbs_packing;
  j["slack_gibbs_hausdorff"] = r.chains.slack_gibbs_hausdorff;
  j["slack_concavity"] = r.chains.slack_concavity;
  j["slack_hausdorff_chain"] = r.chains.slack_hausdorff_chain;
  j["important_inequality"] = r.chains.important_inequality;
  j["slack_keyprop2"] = r.slack_keyprop2;
  j["slack_ks"] = r.slack_ks;
  j["hard_assertions_ok"] = r.hard_assertions_ok;
  return j.dump(2);
}

std::string to_json_line(const ScenerySnapshot& s) {
  ordered_json j;
  j["schema"] = kSchema;
  j["step"] = s.step;
  j["u"] = s.u;
  j["probe_entropy"] = s.probe_entropy;
  j["probe_entropy_y"] = s.probe_entropy_y;
  j["retained_mass"] = s.retained_mass;
  j["atoms"] = s.atoms;
  return j.dump();
}

std::string counts_csv(const std::vector<DepthCount>& counts) {
  std::string out = "k,N_k\n";
  for (const DepthCount& d : counts) out += std::to_string(d.k) + "," + std::to_string(d.count) + "\n";
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace carpetlab
