// Exhaustive and randomized invariant suites behind `carpetlab proptest`.
// Hard suites gate the exit status; diagnostic suites only report.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "carpetlab/carpet.hpp"
#include "carpetlab/error.hpp"
#include "carpetlab/measures.hpp"
#include "carpetlab/report_json.hpp"
#include "carpetlab/scenery.hpp"
#include "carpetlab/slicer.hpp"
#include "carpetlab/symbolic.hpp"
#include "commands.hpp"

namespace carpetlab::cli {

namespace {

using Rng = std::mt19937_64;
using Q = boost::multiprecision::cpp_rational;

struct SuiteResult {
  std::string name;
  bool hard = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string note;
  double seconds = 0.0;
};

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<Carpet> family_32() {
  std::vector<Carpet> out;
  for (int mask = 1; mask < 64; ++mask) {
    std::vector<Digit> d;
    for (int b = 0; b < 6; ++b) {
      if (mask & (1 << b)) d.push_back({b % 3, b / 3});
    }
    out.push_back(Carpet::create(3, 2, d));
  }
  return out;
}

Carpet random_carpet(Rng& rng, int m_max = 7) {
  const int m = uniform_int(rng, 3, m_max);
  const int n = uniform_int(rng, 2, m - 1);
  std::vector<Digit> d;
  while (d.empty()) {
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < n; ++y) {
        if (uniform01(rng) < 0.4) d.push_back({x, y});
      }
    }
  }
  return Carpet::create(m, n, d);
}

std::vector<double> random_probability(Rng& rng, std::size_t size) {
  std::vector<double> v(size);
  double sum = 0.0;
  for (double& x : v) {
    x = -std::log(1.0 - uniform01(rng));
    if (uniform01(rng) < 0.1) x = 0.0;
    sum += x;
  }
  if (sum == 0.0) {
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= sum;
  return v;
}

SymbolWord random_word(Rng& rng, const std::vector<int>& symbols, int alphabet, std::size_t len) {
  SymbolWord w{alphabet, {}};
  w.symbols.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    w.symbols.push_back(symbols[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(symbols.size()) - 1))]);
  }
  return w;
}

bool same_report(const DimensionReport& a, const DimensionReport& b) {
  return a.m == b.m && a.n == b.n && a.dim_h == b.dim_h && a.dim_bp == b.dim_bp &&
         a.dim_star == b.dim_star && a.independent == b.independent &&
         a.slice_bound_h == b.slice_bound_h && a.slice_bound_p == b.slice_bound_p &&
         a.prior_bound == b.prior_bound;
}

// --- carpet_core ---------------------------------------------------------

SuiteResult suite_ordering(Rng& rng) {
  SuiteResult r{"carpet.ordering_chain"};
  auto check = [&](const Carpet& c) {
    ++r.cases;
    const double h = dim_hausdorff(c);
    const double p = dim_box_packing(c);
    const double s = dim_star(c);
    const bool ordered = h <= p + 1e-12 && p <= s + 1e-12;
    const bool all_equal = std::abs(h - p) <= 1e-12 && std::abs(p - s) <= 1e-12;
    if (!ordered || all_equal != c.rows().uniform()) ++r.failures;
  };
  for (const Carpet& c : family_32()) check(c);
  for (int i = 0; i < 1000; ++i) check(random_carpet(rng));
  return r;
}

SuiteResult suite_bound_order(Rng& rng) {
  SuiteResult r{"carpet.bound_ordering"};
  auto check = [&](const Carpet& c) {
    ++r.cases;
    const DimensionReport d = analyze(c);
    if (!(d.slice_bound_h <= d.slice_bound_p + 1e-12 && d.slice_bound_p <= d.prior_bound + 1e-12)) {
      ++r.failures;
    }
  };
  for (const Carpet& c : family_32()) check(c);
  for (int i = 0; i < 1000; ++i) check(random_carpet(rng));
  return r;
}

SuiteResult suite_lambda(Rng& rng) {
  SuiteResult r{"carpet.lambda_closed_form"};
  for (int i = 0; i < 1000; ++i) {
    ++r.cases;
    const double star = 1e-9 + (2.0 - 1e-9) * uniform01(rng);
    const double dx = star * uniform01(rng);
    try {
      const LambdaOptimum o = optimize_lambda(star, dx);
      const double closed = std::max(0.0, dx / star * (star - 1.0));
      if (std::abs(o.bound - closed) > 1e-9) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

SuiteResult suite_transpose(Rng& rng) {
  SuiteResult r{"carpet.transpose_normal_form"};
  auto check = [&](const Carpet& c) {
    ++r.cases;
    std::vector<Digit> t;
    for (const Digit& d : c.digits()) t.push_back({d.y, d.x});
    const Carpet ct = Carpet::create(c.n(), c.m(), t);
    if (!same_report(analyze(c), analyze(ct))) ++r.failures;
  };
  for (const Carpet& c : family_32()) check(c);
  for (int i = 0; i < 200; ++i) check(random_carpet(rng));
  return r;
}

SuiteResult suite_gibbs(Rng& rng) {
  SuiteResult r{"carpet.gibbs_chains"};
  std::vector<Carpet> carpets = family_32();
  for (int i = 0; i < 20; ++i) carpets.push_back(random_carpet(rng));
  for (const Carpet& c : carpets) {
    const std::size_t rows = c.rows().occupied_rows.size();
    for (int i = 0; i < 2000; ++i) {
      ++r.cases;
      const auto nu = random_probability(rng, rows);
      const auto eta = random_probability(rng, rows);
      if (!gibbs_chains(c, nu, eta).hard_ok) ++r.failures;
    }
    ++r.cases;
    const auto pv = packing_equality_vector(c);
    const auto hv = hausdorff_equality_vector(c);
    if (std::abs(dim_box_packing(c) - packing_row_functional(c, pv)) > 1e-9 ||
        std::abs(dim_hausdorff(c) - hausdorff_row_functional(c, hv)) > 1e-9) {
      ++r.failures;
    }
  }
  return r;
}

// --- symbolic_dynamics ---------------------------------------------------

SuiteResult suite_returns() {
  SuiteResult r{"symbolic.return_discrepancy"};
  const Rotation rot = Rotation::from_exponents(3, 2);
  const DiscrepancyScan small = scan_return_discrepancy(rot, 10'000, 1000);
  const DiscrepancyScan large = scan_return_discrepancy(rot, 100'000, 1000);
  r.cases = 2;
  if (small.constant != large.constant) ++r.failures;
  r.note = "C=" + std::to_string(large.constant) + " sup|R-theta k|=" + format_double(large.max_deviation);
  return r;
}

SuiteResult suite_cylinders(Rng& rng) {
  SuiteResult r{"symbolic.cylinder_cover_exact"};
  for (const Carpet& c : family_32()) {
    const auto& rows = c.rows().occupied_rows;
    for (int q = 1; q <= 8; ++q) {
      ++r.cases;
      const SymbolWord w = random_word(rng, rows, c.n(), static_cast<std::size_t>(q));
      std::set<std::uint64_t> cells{0};
      for (int k = 0; k < q; ++k) {
        std::set<std::uint64_t> next;
        for (std::uint64_t cell : cells) {
          for (int b : c.row_digits(w.symbols[static_cast<std::size_t>(k)])) {
            next.insert(cell * static_cast<std::uint64_t>(c.m()) + static_cast<std::uint64_t>(b));
          }
        }
        cells = std::move(next);
      }
      if (BigInt(cells.size()) != cylinder_cover_count(c, w, static_cast<std::size_t>(q)).first) {
        ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult suite_coding(Rng& rng) {
  SuiteResult r{"symbolic.coding_nesting"};
  for (int i = 0; i < 10'000; ++i) {
    ++r.cases;
    const int base = uniform_int(rng, 2, 7);
    std::vector<int> all(static_cast<std::size_t>(base));
    for (int s = 0; s < base; ++s) all[static_cast<std::size_t>(s)] = s;
    const SymbolWord w = random_word(rng, all, base, static_cast<std::size_t>(uniform_int(rng, 0, 12)));
    SymbolWord ext = w;
    for (int j = uniform_int(rng, 1, 6); j > 0; --j) ext.symbols.push_back(uniform_int(rng, 0, base - 1));
    if (!coding_interval(w, base).contains(coding_interval(ext, base))) ++r.failures;
  }
  return r;
}

SuiteResult suite_shift_u(Rng& rng) {
  SuiteResult r{"symbolic.shift_u_composition"};
  const Rotation rot = Rotation::from_exponents(3, 2);
  for (int i = 0; i < 50; ++i) {
    const RotationOrbit orbit(rot, Phase::from_double(uniform01(rng)));
    const SymbolWord w = random_word(rng, {0, 1}, 2, 1200);
    SymbolWord cur = w;
    Phase u = orbit.start();
    for (std::uint64_t k = 0; k <= 1000; ++k) {
      cur = shift_u(cur, u, rot);
      u = rot.advance(u);
      if (k % 97 == 0 || k == 1000) {
        ++r.cases;
        if (cur.size() != w.size() - orbit.return_count(k)) ++r.failures;
      }
    }
  }
  return r;
}

// --- measures ------------------------------------------------------------

DiscreteMeasure random_measure(Rng& rng, std::size_t atoms) {
  std::vector<Atom> a;
  const auto w = random_probability(rng, atoms);
  for (std::size_t i = 0; i < atoms; ++i) a.push_back({uniform01(rng), uniform01(rng), w[i]});
  return DiscreteMeasure(std::move(a)).normalized();
}

SuiteResult suite_entropy(Rng& rng) {
  SuiteResult r{"measures.entropy_bounds_concavity"};
  for (int i = 0; i < 10'000; ++i) {
    ++r.cases;
    const DiscreteMeasure mu = random_measure(rng, static_cast<std::size_t>(uniform_int(rng, 1, 40)));
    const EntropyReport e = entropy(mu, GridPartition::square(2, uniform_int(rng, 0, 5)));
    if (e.entropy < 0.0 || e.entropy > std::log(static_cast<double>(e.cell_count)) + 1e-12) ++r.failures;
  }
  for (int i = 0; i < 1000; ++i) {
    ++r.cases;
    const DiscreteMeasure a = random_measure(rng, 20);
    const DiscreteMeasure b = random_measure(rng, 20);
    const GridPartition part = GridPartition::square(3, 2);
    const double lhs = entropy(mix(a, b, 0.5), part).entropy;
    if (lhs < 0.5 * entropy(a, part).entropy + 0.5 * entropy(b, part).entropy - 1e-12) ++r.failures;
  }
  for (int i = 0; i < 1000; ++i) {
    ++r.cases;
    const auto p = random_probability(rng, 6);
    const auto q = random_probability(rng, 6);
    try {
      if (gibbs_gap(p, q) < -1e-12) ++r.failures;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SupportMismatch) ++r.failures;
    }
    if (std::abs(gibbs_gap(p, p)) > 1e-12) ++r.failures;
  }
  return r;
}

SuiteResult suite_condition(Rng& rng) {
  SuiteResult r{"measures.condition_rescale_mass"};
  for (int i = 0; i < 1000; ++i) {
    ++r.cases;
    const DiscreteMeasure mu = random_measure(rng, 200);
    std::size_t pick = static_cast<std::size_t>(uniform_int(rng, 0, 199));
    while (mu.atoms()[pick].w <= 0.0) pick = (pick + 1) % mu.size();
    const Atom& z = mu.atoms()[pick];
    ApproxSquare sq;
    sq.m = 3;
    sq.n = 2;
    sq.x_digits = digits_of(z.x, 3, uniform_int(rng, 0, 3));
    sq.y_digits = digits_of(z.y, 2, uniform_int(rng, 0, 5));
    try {
      const DiscreteMeasure out = condition_rescale(mu, sq);
      bool inside = true;
      for (const Atom& a : out.atoms()) inside = inside && a.x >= 0 && a.x < 1 && a.y >= 0 && a.y < 1;
      if (!inside || std::abs(out.total_mass() - 1.0) > 1e-12) ++r.failures;
    } catch (const Error&) {
      ++r.failures;
    }
  }
  return r;
}

// --- slicer --------------------------------------------------------------

// Exact closed-rectangle test for y = a/b x + c/d.
bool rational_meets(const Q& s, const Q& t, const Q& x0, const Q& x1, const Q& y0, const Q& y1) {
  const Q v0 = s * x0 + t;
  const Q v1 = s * x1 + t;
  return std::min(v0, v1) <= y1 && std::max(v0, v1) >= y0;
}

std::set<CoverCell> brute_cover(const Carpet& c, const Q& s, const Q& t, int k, double u0) {
  const RotationOrbit orbit = RotationOrbit::for_carpet(c, u0);
  const int p = static_cast<int>(orbit.return_count(static_cast<std::uint64_t>(k)));
  const std::uint64_t sx = checked_pow(c.m(), p);
  const std::uint64_t sy = checked_pow(c.n(), k);
  const std::vector<int> cols = c.occupied_columns();
  std::set<CoverCell> out;
  std::vector<int> xd(static_cast<std::size_t>(p));
  std::vector<int> yd(static_cast<std::size_t>(k));
  for (std::uint64_t X = 0; X < sx; ++X) {
    std::uint64_t v = X;
    for (int i = p - 1; i >= 0; --i, v /= static_cast<std::uint64_t>(c.m())) {
      xd[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(c.m()));
    }
    for (std::uint64_t Y = 0; Y < sy; ++Y) {
      std::uint64_t w = Y;
      for (int i = k - 1; i >= 0; --i, w /= static_cast<std::uint64_t>(c.n())) {
        yd[static_cast<std::size_t>(i)] = static_cast<int>(w % static_cast<std::uint64_t>(c.n()));
      }
      bool valid = true;
      for (int i = 0; i < std::max(p, k) && valid; ++i) {
        if (i < p && i < k) valid = c.contains(xd[static_cast<std::size_t>(i)], yd[static_cast<std::size_t>(i)]);
        else if (i < p) valid = std::count(cols.begin(), cols.end(), xd[static_cast<std::size_t>(i)]) > 0;
        else valid = !c.row_digits(yd[static_cast<std::size_t>(i)]).empty();
      }
      if (!valid) continue;
      if (rational_meets(s, t, Q(X, sx), Q(X + 1, sx), Q(Y, sy), Q(Y + 1, sy))) {
        out.insert({X, Y, p, k});
      }
    }
  }
  return out;
}

SuiteResult suite_conservative(Rng& rng) {
  SuiteResult r{"slicer.conservative_cover"};
  const Carpet c = Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}});
  for (int i = 0; i < 100; ++i) {
    long long a = uniform_int(rng, -9, 9);
    if (a == 0) a = 1;
    const long long b = uniform_int(rng, 1, 9);
    const long long cc = uniform_int(rng, -9, 9);
    const long long d = uniform_int(rng, 1, 9);
    const Line line = Line::from_rational(c.m(), a, b, cc, d);
    const int k = uniform_int(rng, 1, 6);
    ++r.cases;
    const SliceCover cover = slice_cover(c, line, k);
    const std::set<CoverCell> got(cover.cells.begin(), cover.cells.end());
    const auto exact = brute_cover(c, Q(a, b), Q(cc, d), k, line.u0());
    if (!std::includes(got.begin(), got.end(), exact.begin(), exact.end())) ++r.failures;
  }
  return r;
}

SuiteResult suite_nesting(Rng& rng) {
  SuiteResult r{"slicer.nesting_determinism"};
  const Carpet c = Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}});
  for (int i = 0; i < 20; ++i) {
    ++r.cases;
    const Line line = Line::from_exponent(3, uniform01(rng), uniform01(rng) * 0.8, uniform01(rng) < 0.3);
    const int k = 8;
    const SliceCover deep = slice_cover(c, line, k);
    const SliceCover shallow = slice_cover(c, line, k - 1);
    const std::set<CoverCell> parents(shallow.cells.begin(), shallow.cells.end());
    for (const CoverCell& cell : deep.cells) {
      const int dp = cell.p - (shallow.cells.empty() ? cell.p : shallow.cells.front().p);
      const CoverCell parent{cell.x_index / checked_pow(3, dp), cell.y_index / 2, cell.p - dp, k - 1};
      if (!parents.count(parent)) {
        ++r.failures;
        break;
      }
    }
    if (slice_cover(c, line, k).cells != deep.cells) ++r.failures;
  }
  std::vector<Digit> full;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 2; ++y) full.push_back({x, y});
  }
  const Carpet square = Carpet::create(3, 2, full);
  for (const DepthCount& d : slice_counts(square, Line::from_slope(3, 1.0, 0.0), 1, 10)) {
    ++r.cases;
    const double lo = std::ldexp(1.0, d.k);
    if (static_cast<double>(d.count) < lo || static_cast<double>(d.count) > 3.0 * lo) ++r.failures;
  }
  return r;
}

SuiteResult suite_slice_diagnostic(Rng& rng) {
  SuiteResult r{"slicer.example_bound_diagnostic", false};
  const Carpet c = Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}});
  const double bound = slice_bound(c, SliceKind::packing).value;
  for (int i = 0; i < 50; ++i) {
    ++r.cases;
    const Line line = Line::from_exponent(3, uniform01(rng), uniform01(rng), uniform01(rng) < 0.5);
    try {
      const SliceEstimate e = estimate_slice_dimension(slice_counts(c, line, 1, 13), 5, c);
      if (e.slope > bound + 0.15) ++r.failures;
    } catch (const Error&) {
      // too few nonempty depths: nothing to compare
    }
  }
  r.note = "lines flagged above slice_bound_p + 0.15";
  return r;
}

// --- scenery -------------------------------------------------------------

SuiteResult suite_magnification(Rng& rng) {
  SuiteResult r{"scenery.magnification_identity"};
  const Rotation rot = Rotation::from_exponents(3, 2);
  for (int start = 0; start < 100; ++start) {
    std::vector<Atom> atoms;
    const double zx = uniform01(rng);
    const double zy = uniform01(rng);
    atoms.push_back({zx, zy, 1.0});
    for (int i = 0; i < 300; ++i) {
      const double scale = std::pow(2.0, -uniform_int(rng, 0, 14));
      const double x = std::clamp(zx + (uniform01(rng) - 0.5) * scale, 0.0, std::nextafter(1.0, 0.0));
      const double y = std::clamp(zy + (uniform01(rng) - 0.5) * scale, 0.0, std::nextafter(1.0, 0.0));
      atoms.push_back({x, y, uniform01(rng) + 0.01});
    }
    SceneryState s;
    s.mu = DiscreteMeasure(std::move(atoms)).normalized();
    s.x = zx;
    s.y = zy;
    s.u = Phase::from_double(uniform01(rng));
    s.m = 3;
    s.n = 2;
    const RotationOrbit orbit(rot, s.u);
    SceneryState cur = s;
    for (std::uint64_t k = 1; k <= 12; ++k) {
      cur = magnify_step(cur, rot);
      ++r.cases;
      const DiscreteMeasure direct =
          condition_rescale(s.mu, magnification_square(zx, zy, orbit, 3, 2, k));
      bool same = direct.size() == cur.mu.size();
      for (std::size_t i = 0; same && i < direct.size(); ++i) {
        const Atom& a = direct.atoms()[i];
        const Atom& b = cur.mu.atoms()[i];
        same = std::abs(a.x - b.x) <= 1e-9 && std::abs(a.y - b.y) <= 1e-9 && std::abs(a.w - b.w) <= 1e-9;
      }
      if (!same) ++r.failures;
    }
  }
  return r;
}

SuiteResult suite_tv(Rng& rng) {
  SuiteResult r{"scenery.rho_decomposition"};
  const double theta = std::log(2.0) / std::log(3.0);
  for (int i = 0; i < 20; ++i) {
    ++r.cases;
    const SymbolWord w = random_word(rng, {0, 1}, 2, 10'000 + 10);
    const double small = empirical_measures_linear(w, 100, theta).tv_residual;
    const double large = empirical_measures_linear(w, 10'000, theta).tv_residual;
    if (!(large < small || (large == 0.0 && small == 0.0)) || large >= 0.05) ++r.failures;
  }
  return r;
}

SuiteResult suite_phase(Rng& rng) {
  SuiteResult r{"scenery.phase_equidistribution"};
  const Rotation rot = Rotation::from_exponents(3, 2);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    ++r.cases;
    std::vector<double> phases;
    Phase u = Phase::from_double(uniform01(rng));
    for (int k = 0; k < 10'000; ++k, u = rot.advance(u)) phases.push_back(u.value());
    const double d = star_discrepancy(phases);
    worst = std::max(worst, d);
    if (d > 0.02) ++r.failures;
  }
  r.note = "max star discrepancy " + format_double(worst);
  return r;
}

SuiteResult suite_chain_tables(Rng& rng) {
  SuiteResult r{"scenery.bound_chain_tables"};
  const Carpet c = Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}});
  for (int i = 0; i < 10'000; ++i) {
    ++r.cases;
    const auto nu = random_probability(rng, 2);
    const auto eta = random_probability(rng, 2);
    if (!gibbs_chains(c, nu, eta).hard_ok) ++r.failures;
  }
  return r;
}

SuiteResult suite_subsequence(Rng& rng) {
  SuiteResult r{"scenery.subsequence_nonempty", false};
  const double theta = std::log(2.0) / std::log(3.0);
  for (int i = 0; i < 100; ++i) {
    ++r.cases;
    const SymbolWord w = random_word(rng, {0, 1}, 2, 1000);
    const SubsequenceSelection sel = select_entropy_subsequence(w, 14, theta, 0.0);
    if (sel.empty || sel.min_concavity_slack < -1e-9) ++r.failures;
  }
  return r;
}

}  // namespace

CommandOutput cmd_proptest(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<std::function<SuiteResult()>> suites = {
      [&] { return suite_ordering(rng); },     [&] { return suite_bound_order(rng); },
      [&] { return suite_lambda(rng); },       [&] { return suite_transpose(rng); },
      [&] { return suite_gibbs(rng); },        [&] { return suite_returns(); },
      [&] { return suite_cylinders(rng); },    [&] { return suite_coding(rng); },
      [&] { return suite_shift_u(rng); },      [&] { return suite_entropy(rng); },
      [&] { return suite_condition(rng); },    [&] { return suite_conservative(rng); },
      [&] { return suite_nesting(rng); },      [&] { return suite_slice_diagnostic(rng); },
      [&] { return suite_magnification(rng); }, [&] { return suite_tv(rng); },
      [&] { return suite_phase(rng); },        [&] { return suite_chain_tables(rng); },
      [&] { return suite_subsequence(rng); },
  };

  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["seed"] = cfg.seed;
  doc["suites"] = nlohmann::ordered_json::array();
  std::string text;
  bool hard_failed = false;
  for (auto& run : suites) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult s;
    try {
      s = run();
    } catch (const Error& e) {
      s.failures = 1;
      s.note = std::string("unexpected ") + std::string(to_string(e.code())) + ": " + e.what();
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = s.failures == 0;
    if (!pass && s.hard) hard_failed = true;
    text += std::string(pass ? "PASS " : (s.hard ? "FAIL " : "NOTE ")) + s.name + " (" +
            std::to_string(s.cases) + " cases, " + std::to_string(s.failures) + " failures" +
            (s.hard ? "" : ", diagnostic") + (s.note.empty() ? "" : "; " + s.note) + ")\n";
    doc["suites"].push_back({{"name", s.name},
                             {"hard", s.hard},
                             {"cases", s.cases},
                             {"failures", s.failures},
                             {"passed", pass},
                             {"note", s.note}});
  }
  doc["hard_assertions_ok"] = !hard_failed;
  CommandOutput out;
  out.stdout_text = text;
  out.files.push_back({"proptest.json", doc.dump(2) + "\n"});
  out.exit_code = hard_failed ? 1 : 0;
  return out;
}

}  // namespace carpetlab::cli
