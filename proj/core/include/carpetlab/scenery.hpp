#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "carpetlab/carpet.hpp"
#include "carpetlab/fixed_point.hpp"
#include "carpetlab/measures.hpp"
#include "carpetlab/symbolic.hpp"

namespace carpetlab {

/// (mu, z, u, omega). z is an atom of mu; omega lists the rows that constrain
/// the x-digits still to be magnified.
struct SceneryState {
  DiscreteMeasure mu;
  double x = 0.0;
  double y = 0.0;
  Phase u;
  SymbolWord omega;
  int m = 2;
  int n = 2;
};

/// First `count` base-`base` digits of x in [0,1).
std::vector<int> digits_of(double x, int base, int count);

/// One application of T = (M, sigma_u).
SceneryState magnify_step(const SceneryState& s, const Rotation& rotation);

/// Cell that k magnifications from (z, u0) condition on: the y-prefix of length
/// k and one x-digit for every return among the phases u0, ..., u0 + (k-1) theta.
ApproxSquare magnification_square(double x, double y, const RotationOrbit& orbit, int m, int n,
                                  std::uint64_t k);

struct ScenerySnapshot {
  std::size_t step = 0;
  double u = 0.0;
  double probe_entropy = 0.0;    // H(mu, D_{n^l} square) / (l log n)
  double probe_entropy_y = 0.0;  // H(mu, D_{n^l} rows) / (l log n)
  double retained_mass = 1.0;    // mass of the cell conditioned on at this step
  std::size_t atoms = 0;
};

struct SceneryOptions {
  std::size_t stride = 1;
  int probe_level = 4;
};

struct SceneryRun {
  std::vector<ScenerySnapshot> snapshots;
  std::vector<double> phases;      // u_0 .. u_{N-1}
  std::vector<bool> returns;       // u_i in [1 - theta, 1)
  std::vector<int> leading_symbol; // omega_1 before step i, -1 once exhausted
  SceneryState final_state;
};

inline constexpr std::size_t kMaxSceneryLength = 100'000;

/// N magnification steps. Failures are rethrown with the failing step attached.
SceneryRun run_scenery(const SceneryState& initial, std::size_t steps,
                       const Rotation& rotation, const SceneryOptions& opts = {});

/// Largest deviation of the empirical distribution function of `points` in [0,1)
/// from the identity.
double star_discrepancy(std::vector<double> points);

/// Block frequencies of the shifts sigma^i(omega), i in [first, last]; tables[b-1]
/// maps the base-alphabet code of a length-b block to its frequency.
struct BlockMeasure {
  std::vector<std::map<std::uint64_t, double>> tables;
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  bool empty_window = false;  // window had no shifts; copied from its partner

  /// Single-symbol probabilities indexed by symbol value.
  std::vector<double> marginal(int alphabet_size) const;
  double block_entropy(int length) const;
};

struct EmpiricalTriple {
  std::string window;        // "linear" or "exponential"
  std::uint64_t parameter = 0;  // N, or the window index k
  int alphabet_size = 2;
  int block = 1;
  double theta = 1.0;
  BlockMeasure nu;
  BlockMeasure eta;
  BlockMeasure rho;
  /// ||rho - (theta nu + (1 - theta) eta)||_TV on length-`block` blocks.
  double tv_residual = 0.0;
};

inline constexpr int kDefaultBlock = 6;

/// Windows [1, floor(N theta)], (floor(N theta), N], [1, N].
EmpiricalTriple empirical_measures_linear(const SymbolWord& omega, std::uint64_t N,
                                          double theta, int block = kDefaultBlock);

/// nu_k over shifts 1..floor(theta^-(k-1)), eta_k over the rest of 1..floor(theta^-k);
/// rho is the mixture theta nu_k + (1 - theta) eta_k.
EmpiricalTriple empirical_measures_exponential(const SymbolWord& omega, int k, double theta,
                                               int block = kDefaultBlock);

struct SubsequenceSelection {
  std::vector<int> selected;
  std::vector<double> gaps;  // H(eta_k) - H(nu_k), k = 1..k_max
  /// min over k of H(nu_{k+1}) - [w H(nu_k) + (1 - w) H(eta_k)]; >= 0 by concavity.
  double min_concavity_slack = 0.0;
  bool empty = true;
};

SubsequenceSelection select_entropy_subsequence(const SymbolWord& omega, int k_max,
                                                double theta, double eps);

/// The two Gibbs chains for row vectors nu, eta indexed like rows().occupied_rows.
struct GibbsChains {
  double sum_nu_log_a = 0.0;       // sum nu_j log a(j) / log m
  double entropy_nu = 0.0;
  double entropy_eta = 0.0;
  double entropy_mix = 0.0;        // H(theta nu + (1 - theta) eta)
  double rhs_packing_form = 0.0;   // sum + theta H(nu)/log n + (1-theta) log|rows|/log n
  double rhs_hausdorff_form = 0.0; // sum + (theta H(nu) + (1-theta) H(eta))/log n
  double slack_gibbs_packing = 0.0;    // dim_bp - rhs_packing_form
  double slack_gibbs_hausdorff = 0.0;  // dim_h - (sum + H(nu)/log n)
  double slack_concavity = 0.0;        // H(mix) - theta H(nu) - (1-theta) H(eta)
  double slack_hausdorff_chain = 0.0;  // dim_h - rhs_hausdorff_form
  bool important_inequality = false;   // H(eta) <= H(nu)
  bool hard_ok = false;
};

GibbsChains gibbs_chains(const Carpet& c, std::span<const double> nu,
                         std::span<const double> eta);

struct BoundChainReport {
  double dim_h = 0.0;
  double dim_bp = 0.0;
  int block = 1;
  double h_est = 0.0;                 // H_B(rho) / B
  std::vector<double> rate_curve;     // H_b(rho) / b, b = 1..B
  bool rate_monotone = true;
  double rhs_keyprop2 = 0.0;          // sum + h_est / log n
  double slack_keyprop2 = 0.0;        // dim_bp - rhs_keyprop2, informational
  double slack_ks = 0.0;              // H_1(rho) - h_est, informational
  double entropy_gap = 0.0;           // H(eta) - H(nu)
  double lhs_gamma_proxy = 0.0;       // filled in by callers holding a measure
  GibbsChains chains;
  bool hard_assertions_ok = false;
};

BoundChainReport bound_chain_report(const Carpet& c, const EmpiricalTriple& triple, int block);

}  // namespace carpetlab
