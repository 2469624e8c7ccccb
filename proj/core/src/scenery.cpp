#include "carpetlab/scenery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "carpetlab/error.hpp"

namespace carpetlab {

namespace {

constexpr double kHardTolerance = 1e-9;

std::uint64_t block_code_limit(int alphabet, int block) {
  return checked_pow(alphabet, block);
}

// Frequencies of the length-1..block blocks starting at 0-indexed positions
// first..last of omega.
BlockMeasure window_tables(const SymbolWord& omega, std::uint64_t first, std::uint64_t last,
                           int block) {
  BlockMeasure out;
  out.first = first;
  out.last = last;
  out.tables.resize(static_cast<std::size_t>(block));
  if (last < first) {
    out.empty_window = true;
    return out;
  }
  const auto count = static_cast<double>(last - first + 1);
  const auto base = static_cast<std::uint64_t>(omega.alphabet_size);
  for (std::uint64_t s = first; s <= last; ++s) {
    std::uint64_t code = 0;
    for (int b = 1; b <= block; ++b) {
      code = code * base + static_cast<std::uint64_t>(omega.symbols[s + static_cast<std::uint64_t>(b) - 1]);
      out.tables[static_cast<std::size_t>(b) - 1][code] += 1.0;
    }
  }
  for (auto& table : out.tables) {
    for (auto& [code, w] : table) w /= count;
  }
  return out;
}

BlockMeasure mixture(const BlockMeasure& a, const BlockMeasure& b, double t) {
  BlockMeasure out;
  out.first = std::min(a.first, b.first);
  out.last = std::max(a.last, b.last);
  out.tables.resize(a.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    for (const auto& [code, w] : a.tables[i]) out.tables[i][code] += t * w;
    for (const auto& [code, w] : b.tables[i]) out.tables[i][code] += (1.0 - t) * w;
  }
  return out;
}

// Empty windows borrow their partner's tables so that every entropy is defined.
void fill_empty(BlockMeasure& target, const BlockMeasure& partner) {
  if (!target.empty_window) return;
  target.tables = partner.tables;
}

void check_word(const SymbolWord& omega, std::uint64_t needed, int block) {
  if (block < 1) throw Error(ErrorCode::BlockTooDeep, "block length must be >= 1");
  omega.validate();
  block_code_limit(omega.alphabet_size, block);
  if (omega.size() < needed) {
    throw Error(ErrorCode::WordTooShort,
                "empirical windows need " + std::to_string(needed) + " symbols, word has " +
                    std::to_string(omega.size()));
  }
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw Error(ErrorCode::DomainError, "theta must lie in (0,1]");
}

// floor(theta^-k) with a guard against values a hair below an integer.
std::uint64_t inverse_power_floor(double theta, int k) {
  const long double v = std::pow(static_cast<long double>(theta), -static_cast<long double>(k));
  return static_cast<std::uint64_t>(std::floor(v * (1.0L + 8 * std::numeric_limits<long double>::epsilon())));
}

std::vector<double> symbol_frequencies(const SymbolWord& omega, std::uint64_t first,
                                       std::uint64_t last) {
  std::vector<double> f(static_cast<std::size_t>(omega.alphabet_size), 0.0);
  if (last < first) return f;
  for (std::uint64_t i = first; i <= last; ++i) f[static_cast<std::size_t>(omega.symbols[i])] += 1.0;
  for (double& x : f) x /= static_cast<double>(last - first + 1);
  return f;
}

std::vector<double> to_rows(const Carpet& c, const std::vector<double>& by_symbol) {
  std::vector<double> rows(c.rows().occupied_rows.size(), 0.0);
  for (std::size_t s = 0; s < by_symbol.size(); ++s) {
    if (by_symbol[s] <= 0.0) continue;
    const int pos = c.row_position(static_cast<int>(s));
    if (pos < 0) {
      throw Error(ErrorCode::UnoccupiedRowSymbol,
                  "symbol " + std::to_string(s) + " is not an occupied row");
    }
    rows[static_cast<std::size_t>(pos)] = by_symbol[s];
  }
  return rows;
}

std::vector<double> table_values(const std::map<std::uint64_t, double>& table) {
  std::vector<double> v;
  v.reserve(table.size());
  for (const auto& [code, w] : table) v.push_back(w);
  return v;
}

}  // namespace

std::vector<int> digits_of(double x, int base, int count) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  std::uint64_t prev = 0;
  for (int i = 1; i <= count; ++i) {
    const std::uint64_t cur = scaled_floor(x, checked_pow(base, i));
    out.push_back(static_cast<int>(cur - prev * static_cast<std::uint64_t>(base)));
    prev = cur;
  }
  return out;
}

SceneryState magnify_step(const SceneryState& s, const Rotation& rotation) {
  const bool ret = rotation.returns(s.u);
  ApproxSquare sq;
  sq.m = s.m;
  sq.n = s.n;
  if (ret) sq.x_digits = {static_cast<int>(scaled_floor(s.x, static_cast<std::uint64_t>(s.m)))};
  sq.y_digits = {static_cast<int>(scaled_floor(s.y, static_cast<std::uint64_t>(s.n)))};

  SceneryState next;
  next.mu = condition_rescale(s.mu, sq);
  next.x = ret ? scaled_frac(s.x, static_cast<std::uint64_t>(s.m)) : s.x;
  next.y = scaled_frac(s.y, static_cast<std::uint64_t>(s.n));
  next.u = rotation.advance(s.u);
  next.omega = (ret && !s.omega.empty()) ? shift(s.omega) : s.omega;
  next.m = s.m;
  next.n = s.n;
  return next;
}

ApproxSquare magnification_square(double x, double y, const RotationOrbit& orbit, int m, int n,
                                  std::uint64_t k) {
  const std::uint64_t p = k == 0 ? 0 : orbit.return_count(k - 1);
  ApproxSquare sq;
  sq.m = m;
  sq.n = n;
  sq.x_digits = digits_of(x, m, static_cast<int>(p));
  sq.y_digits = digits_of(y, n, static_cast<int>(k));
  return sq;
}

SceneryRun run_scenery(const SceneryState& initial, std::size_t steps, const Rotation& rotation,
                       const SceneryOptions& opts) {
  if (steps > kMaxSceneryLength) {
    throw Error(ErrorCode::DomainError, "scenery runs are limited to 10^5 steps");
  }
  if (opts.stride == 0 || opts.probe_level < 1) {
    throw Error(ErrorCode::DomainError, "stride and probe level must be positive");
  }
  const double probe_norm = opts.probe_level * std::log(static_cast<double>(initial.n));
  auto snapshot = [&](const SceneryState& s, std::size_t step, double retained) {
    ScenerySnapshot snap;
    snap.step = step;
    snap.u = s.u.value();
    snap.probe_entropy =
        entropy(s.mu, GridPartition::square(s.n, opts.probe_level)).entropy / probe_norm;
    snap.probe_entropy_y =
        entropy(s.mu, GridPartition::y_only(s.n, opts.probe_level)).entropy / probe_norm;
    snap.retained_mass = retained;
    snap.atoms = s.mu.size();
    return snap;
  };

  SceneryRun run;
  run.phases.reserve(steps);
  run.returns.reserve(steps);
  run.leading_symbol.reserve(steps);
  SceneryState state = initial;
  double retained = 1.0;
  for (std::size_t i = 0; i < steps; ++i) {
    run.phases.push_back(state.u.value());
    const bool ret = rotation.returns(state.u);
    run.returns.push_back(ret);
    run.leading_symbol.push_back(state.omega.empty() ? -1 : state.omega.symbols.front());
    try {
      if (i % opts.stride == 0) run.snapshots.push_back(snapshot(state, i, retained));
      ApproxSquare sq;
      sq.m = state.m;
      sq.n = state.n;
      if (ret) sq.x_digits = digits_of(state.x, state.m, 1);
      sq.y_digits = digits_of(state.y, state.n, 1);
      retained = cell_mass(state.mu, sq);
      state = magnify_step(state, rotation);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at step " + std::to_string(i), i);
    }
  }
  run.snapshots.push_back(snapshot(state, steps, retained));
  run.final_state = std::move(state);
  return run;
}

double star_discrepancy(std::vector<double> points) {
  if (points.empty()) return 0.0;
  std::sort(points.begin(), points.end());
  const auto n = static_cast<double>(points.size());
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / n - points[i]);
    d = std::max(d, points[i] - static_cast<double>(i) / n);
  }
  return d;
}

std::vector<double> BlockMeasure::marginal(int alphabet_size) const {
  std::vector<double> out(static_cast<std::size_t>(alphabet_size), 0.0);
  if (tables.empty()) return out;
  for (const auto& [code, w] : tables.front()) out[static_cast<std::size_t>(code)] += w;
  return out;
}

double BlockMeasure::block_entropy(int length) const {
  if (length < 1 || static_cast<std::size_t>(length) > tables.size()) {
    throw Error(ErrorCode::BlockTooDeep,
                "block length " + std::to_string(length) + " exceeds table depth " +
                    std::to_string(tables.size()));
  }
  return shannon_entropy(table_values(tables[static_cast<std::size_t>(length) - 1]));
}

EmpiricalTriple empirical_measures_linear(const SymbolWord& omega, std::uint64_t N, double theta,
                                          int block) {
  check_theta(theta);
  if (N == 0) throw Error(ErrorCode::DomainError, "N must be positive");
  check_word(omega, N + static_cast<std::uint64_t>(block), block);
  const auto split = static_cast<std::uint64_t>(std::floor(static_cast<long double>(N) * theta));

  EmpiricalTriple t;
  t.window = "linear";
  t.parameter = N;
  t.alphabet_size = omega.alphabet_size;
  t.block = block;
  t.theta = theta;
  t.nu = window_tables(omega, 1, split, block);
  t.eta = window_tables(omega, split + 1, N, block);
  t.rho = window_tables(omega, 1, N, block);
  fill_empty(t.nu, t.eta);
  fill_empty(t.eta, t.nu);

  const BlockMeasure mix = mixture(t.nu, t.eta, theta);
  const auto& r = t.rho.tables.back();
  const auto& q = mix.tables.back();
  std::vector<double> diffs;
  for (const auto& [code, w] : r) {
    auto it = q.find(code);
    diffs.push_back(std::fabs(w - (it == q.end() ? 0.0 : it->second)));
  }
  for (const auto& [code, w] : q) {
    if (!r.count(code)) diffs.push_back(std::fabs(w));
  }
  t.tv_residual = 0.5 * pairwise_sum(diffs);
  return t;
}

EmpiricalTriple empirical_measures_exponential(const SymbolWord& omega, int k, double theta,
                                               int block) {
  check_theta(theta);
  if (k < 1) throw Error(ErrorCode::DomainError, "window index must be >= 1");
  const std::uint64_t a = inverse_power_floor(theta, k - 1);
  const std::uint64_t b = std::max(a, inverse_power_floor(theta, k));
  check_word(omega, b + static_cast<std::uint64_t>(block), block);

  EmpiricalTriple t;
  t.window = "exponential";
  t.parameter = static_cast<std::uint64_t>(k);
  t.alphabet_size = omega.alphabet_size;
  t.block = block;
  t.theta = theta;
  t.nu = window_tables(omega, 1, a, block);
  t.eta = window_tables(omega, a + 1, b, block);
  fill_empty(t.eta, t.nu);
  t.rho = mixture(t.nu, t.eta, theta);
  t.tv_residual = 0.0;
  return t;
}

SubsequenceSelection select_entropy_subsequence(const SymbolWord& omega, int k_max, double theta,
                                                double eps) {
  check_theta(theta);
  if (k_max < 1) throw Error(ErrorCode::DomainError, "k_max must be >= 1");
  const std::uint64_t last = std::max(inverse_power_floor(theta, k_max),
                                      inverse_power_floor(theta, k_max - 1));
  check_word(omega, last + 1, 1);

  SubsequenceSelection sel;
  sel.min_concavity_slack = std::numeric_limits<double>::infinity();
  std::vector<double> h_nu;
  std::vector<double> h_eta;
  std::vector<double> weight;
  for (int k = 1; k <= k_max; ++k) {
    const std::uint64_t a = inverse_power_floor(theta, k - 1);
    const std::uint64_t b = std::max(a, inverse_power_floor(theta, k));
    const double hn = shannon_entropy(symbol_frequencies(omega, 1, a));
    const double he = b > a ? shannon_entropy(symbol_frequencies(omega, a + 1, b)) : hn;
    h_nu.push_back(hn);
    h_eta.push_back(he);
    weight.push_back(static_cast<double>(a) / static_cast<double>(b));
    sel.gaps.push_back(he - hn);
    if (he - hn <= eps) sel.selected.push_back(k);
  }
  for (int k = 1; k < k_max; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const double lower = weight[i] * h_nu[i] + (1.0 - weight[i]) * h_eta[i];
    sel.min_concavity_slack = std::min(sel.min_concavity_slack, h_nu[i + 1] - lower);
  }
  if (k_max == 1) sel.min_concavity_slack = 0.0;
  sel.empty = sel.selected.empty();
  return sel;
}

GibbsChains gibbs_chains(const Carpet& c, std::span<const double> nu, std::span<const double> eta) {
  const std::size_t rows = c.rows().occupied_rows.size();
  if (nu.size() != rows || eta.size() != rows) {
    throw Error(ErrorCode::DomainError, "row vectors must match the occupied rows");
  }
  const long double theta = c.theta();
  const double log_m = std::log(static_cast<double>(c.m()));
  const double log_n = std::log(static_cast<double>(c.n()));

  GibbsChains g;
  std::vector<double> terms;
  for (std::size_t i = 0; i < rows; ++i) {
    const int a = c.rows().row_count.at(c.rows().occupied_rows[i]);
    terms.push_back(nu[i] * std::log(static_cast<double>(a)));
  }
  g.sum_nu_log_a = pairwise_sum(terms) / log_m;
  g.entropy_nu = shannon_entropy(nu);
  g.entropy_eta = shannon_entropy(eta);
  std::vector<double> mix(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    mix[i] = static_cast<double>(theta * nu[i] + (1.0L - theta) * eta[i]);
  }
  g.entropy_mix = shannon_entropy(mix);

  const double th = static_cast<double>(theta);
  g.rhs_packing_form = packing_row_functional(c, nu);
  g.rhs_hausdorff_form =
      g.sum_nu_log_a + (th * g.entropy_nu + (1.0 - th) * g.entropy_eta) / log_n;
  g.slack_gibbs_packing = dim_box_packing(c) - g.rhs_packing_form;
  g.slack_gibbs_hausdorff = dim_hausdorff(c) - hausdorff_row_functional(c, nu);
  g.slack_concavity = g.entropy_mix - (th * g.entropy_nu + (1.0 - th) * g.entropy_eta);
  g.slack_hausdorff_chain = dim_hausdorff(c) - g.rhs_hausdorff_form;
  g.important_inequality = g.entropy_eta <= g.entropy_nu + 1e-12;
  g.hard_ok = g.slack_gibbs_packing >= -kHardTolerance &&
              g.slack_gibbs_hausdorff >= -kHardTolerance &&
              g.slack_concavity >= -kHardTolerance &&
              (!g.important_inequality || g.slack_hausdorff_chain >= -kHardTolerance);
  return g;
}

BoundChainReport bound_chain_report(const Carpet& c, const EmpiricalTriple& triple, int block) {
  if (block < 1 || block > triple.block) {
    throw Error(ErrorCode::BlockTooDeep,
                "block " + std::to_string(block) + " exceeds table depth " +
                    std::to_string(triple.block));
  }
  const std::vector<double> nu = to_rows(c, triple.nu.marginal(triple.alphabet_size));
  const std::vector<double> eta = to_rows(c, triple.eta.marginal(triple.alphabet_size));
  const double log_n = std::log(static_cast<double>(c.n()));

  BoundChainReport r;
  r.dim_h = dim_hausdorff(c);
  r.dim_bp = dim_box_packing(c);
  r.block = block;
  r.chains = gibbs_chains(c, nu, eta);
  for (int b = 1; b <= block; ++b) {
    r.rate_curve.push_back(triple.rho.block_entropy(b) / b);
    if (b > 1 && r.rate_curve[static_cast<std::size_t>(b) - 1] >
                     r.rate_curve[static_cast<std::size_t>(b) - 2] + 1e-12) {
      r.rate_monotone = false;
    }
  }
  r.h_est = r.rate_curve.back();
  r.rhs_keyprop2 = r.chains.sum_nu_log_a + r.h_est / log_n;
  r.slack_keyprop2 = r.dim_bp - r.rhs_keyprop2;
  r.slack_ks = r.rate_curve.front() - r.h_est;
  r.entropy_gap = r.chains.entropy_eta - r.chains.entropy_nu;
  r.hard_assertions_ok = r.chains.hard_ok;
  return r;
}

}  // namespace carpetlab
