#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "carpetlab/error.hpp"
#include "carpetlab/scenery.hpp"
#include "carpetlab/slicer.hpp"

using namespace carpetlab;

namespace {

const Rotation kRot = Rotation::from_exponents(3, 2);
const double kTheta = std::log(2.0) / std::log(3.0);

Carpet example() { return Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}}); }

Carpet full_square() {
  std::vector<Digit> d;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) d.push_back({x, y});
  return Carpet::create(3, 2, d);
}

SymbolWord random_word(std::mt19937_64& rng, std::size_t len) {
  SymbolWord w{2, {}};
  for (std::size_t i = 0; i < len; ++i) w.symbols.push_back(static_cast<int>(rng() % 2));
  return w;
}

DiscreteMeasure uniform_grid(int m, int n, int px, int py) {
  std::vector<std::pair<double, double>> pts;
  const int sx = static_cast<int>(std::pow(m, px));
  const int sy = static_cast<int>(std::pow(n, py));
  for (int i = 0; i < sx; ++i)
    for (int j = 0; j < sy; ++j) pts.push_back({(i + 0.5) / sx, (j + 0.5) / sy});
  return DiscreteMeasure::uniform(pts);
}

SceneryState state_of(DiscreteMeasure mu, double x, double y, double u) {
  SceneryState s;
  s.mu = std::move(mu);
  s.x = x;
  s.y = y;
  s.u = Phase::from_double(u);
  s.m = 3;
  s.n = 2;
  return s;
}

}  // namespace

TEST(Scenery, DigitsOf) {
  EXPECT_EQ(digits_of(0.75, 2, 3), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(digits_of(19.0 / 27.0 + 1e-9, 3, 3), (std::vector<int>{2, 0, 1}));
  EXPECT_TRUE(digits_of(0.3, 2, 0).empty());
}

TEST(Scenery, MagnifyStepBranches) {
  const SceneryState s = state_of(DiscreteMeasure::point_mass(0.7, 0.6), 0.7, 0.6, 0.9);
  const SceneryState ret = magnify_step(s, kRot);  // 0.9 is a return
  EXPECT_NEAR(ret.x, 0.1, 1e-15);
  EXPECT_NEAR(ret.y, 0.2, 1e-15);
  EXPECT_NEAR(ret.mu.atoms()[0].x, 0.1, 1e-15);
  const SceneryState stay = magnify_step(state_of(DiscreteMeasure::point_mass(0.7, 0.6), 0.7, 0.6, 0.1), kRot);
  EXPECT_DOUBLE_EQ(stay.x, 0.7);
  EXPECT_NEAR(stay.y, 0.2, 1e-15);
  EXPECT_NEAR(stay.u.value(), 0.1 + kTheta, 1e-15);
}

TEST(Scenery, UniformMeasureIsSelfSimilar) {
  const DiscreteMeasure mu = uniform_grid(3, 2, 6, 10);
  SceneryState s = state_of(mu, mu.atoms()[100].x, mu.atoms()[100].y, 0.3);
  for (int k = 0; k < 4; ++k) {
    s = magnify_step(s, kRot);
    const double w = s.mu.atoms()[0].w;
    for (const Atom& a : s.mu.atoms()) ASSERT_NEAR(a.w, w, 1e-15);
  }
}

TEST(Scenery, MagnificationIdentity) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int start = 0; start < 30; ++start) {
    const double zx = u(rng);
    const double zy = u(rng);
    std::vector<Atom> atoms{{zx, zy, 1.0}};
    for (int i = 0; i < 200; ++i) {
      const double r = std::ldexp(1.0, -static_cast<int>(rng() % 14));
      atoms.push_back({std::clamp(zx + (u(rng) - 0.5) * r, 0.0, 0.999999),
                       std::clamp(zy + (u(rng) - 0.5) * r, 0.0, 0.999999), u(rng) + 0.01});
    }
    const SceneryState s0 = state_of(DiscreteMeasure(atoms).normalized(), zx, zy, u(rng));
    const RotationOrbit orbit(kRot, s0.u);
    SceneryState s = s0;
    for (std::uint64_t k = 1; k <= 12; ++k) {
      s = magnify_step(s, kRot);
      const DiscreteMeasure direct = condition_rescale(s0.mu, magnification_square(zx, zy, orbit, 3, 2, k));
      ASSERT_EQ(direct.size(), s.mu.size());
      for (std::size_t i = 0; i < direct.size(); ++i) {
        ASSERT_NEAR(direct.atoms()[i].x, s.mu.atoms()[i].x, 1e-9);
        ASSERT_NEAR(direct.atoms()[i].y, s.mu.atoms()[i].y, 1e-9);
        ASSERT_NEAR(direct.atoms()[i].w, s.mu.atoms()[i].w, 1e-9);
      }
    }
  }
}

TEST(Scenery, RunPointMassHasZeroEntropy) {
  SceneryState s = state_of(DiscreteMeasure::point_mass(0.2, 0.3), 0.2, 0.3, 0.5);
  const SceneryRun run = run_scenery(s, 200, kRot);
  for (const ScenerySnapshot& snap : run.snapshots) EXPECT_EQ(snap.probe_entropy, 0.0);
  EXPECT_EQ(run.phases.size(), 200u);
}

TEST(Scenery, RunUniformSquareKeepsNormalizedEntropyTwo) {
  // 3^7 columns x 2^8 rows; after 4 steps at least 81 columns remain per 8 probe bins
  const DiscreteMeasure mu = uniform_grid(3, 2, 7, 8);
  SceneryState s = state_of(mu, mu.atoms()[12345].x, mu.atoms()[12345].y, 0.25);
  SceneryOptions o;
  o.probe_level = 3;
  const SceneryRun run = run_scenery(s, 4, kRot, o);
  for (std::size_t i = 0; i + 1 < run.snapshots.size(); ++i) {
    EXPECT_NEAR(run.snapshots[i].probe_entropy, 2.0, 1e-2) << i;
  }
}

TEST(Scenery, RunDiagonalFrostmanEntropyNearOne) {
  const Line diag = Line::from_slope(3, 1.0, 0.0);
  const int depth = 14;
  const DiscreteMeasure mu = frostman_approx(full_square(), diag, depth);
  const Atom z = mu.atoms()[mu.size() / 3];
  SceneryOptions o;
  o.probe_level = 6;  // coarser probes lose log(1/segment length) to the window edge
  const SceneryRun run = run_scenery(state_of(mu, z.x, z.y, diag.u0()), depth - o.probe_level, kRot, o);
  double sum = 0.0;
  for (const ScenerySnapshot& snap : run.snapshots) sum += snap.probe_entropy;
  EXPECT_NEAR(sum / static_cast<double>(run.snapshots.size()), 1.0, 0.1);
}

TEST(Scenery, RunLimitsAndErrorsCarryStep) {
  SceneryState s = state_of(DiscreteMeasure::point_mass(0.2, 0.3), 0.2, 0.3, 0.5);
  EXPECT_THROW(run_scenery(s, kMaxSceneryLength + 1, kRot), Error);
  s.x = 0.9;  // z no longer in the support
  try {
    run_scenery(s, 10, kRot);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroMassCell);
    ASSERT_TRUE(e.step().has_value());
  }
}

TEST(Scenery, PhaseTrackEquidistributes) {
  const SceneryRun run =
      run_scenery(state_of(DiscreteMeasure::point_mass(0.2, 0.3), 0.2, 0.3, 0.123), 10000, kRot);
  EXPECT_LE(star_discrepancy(run.phases), 0.02);
}

TEST(Scenery, LinearWindowsOfConstantWord) {
  const SymbolWord w{2, std::vector<int>(200, 1)};
  const EmpiricalTriple t = empirical_measures_linear(w, 100, kTheta, 3);
  EXPECT_EQ(t.nu.marginal(2), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(t.eta.marginal(2), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(t.rho.marginal(2), (std::vector<double>{0.0, 1.0}));
  // nu and eta coincide, so the decomposition is exact on this word.
  EXPECT_LE(t.tv_residual, std::fabs(std::floor(100 * kTheta) / 100 - kTheta) + 1e-15);
}

TEST(Scenery, LinearWindowsOfPeriodicWord) {
  SymbolWord w{2, {}};
  for (int i = 0; i < 2000; ++i) w.symbols.push_back(i % 2);
  const EmpiricalTriple t = empirical_measures_linear(w, 1000, kTheta, 2);
  for (const BlockMeasure* b : {&t.nu, &t.eta, &t.rho}) {
    const auto m = b->marginal(2);
    EXPECT_NEAR(m[0], 0.5, 2e-3);
    EXPECT_NEAR(m[1], 0.5, 2e-3);
  }
  EXPECT_THROW(empirical_measures_linear(w, 1999, kTheta, 2), Error);
}

TEST(Scenery, BlockTablesAreShiftConsistent) {
  std::mt19937_64 rng(42);
  const EmpiricalTriple t = empirical_measures_linear(random_word(rng, 3000), 2000, kTheta, 4);
  const auto& t3 = t.rho.tables[2];
  const auto& t4 = t.rho.tables[3];
  std::map<std::uint64_t, double> prefix;
  for (const auto& [code, w] : t4) prefix[code / 2] += w;
  for (const auto& [code, w] : t3) EXPECT_NEAR(prefix[code], w, 1e-12);
  EXPECT_THROW(t.rho.block_entropy(5), Error);
}

TEST(Scenery, TvResidualShrinks) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
    const SymbolWord w = random_word(rng, 10010);
    const double r2 = empirical_measures_linear(w, 100, kTheta).tv_residual;
    const double r3 = empirical_measures_linear(w, 1000, kTheta).tv_residual;
    const double r4 = empirical_measures_linear(w, 10000, kTheta).tv_residual;
    EXPECT_LT(r4, r2);
    EXPECT_LT(r4, 0.05);
    // floor(N theta)/N is 0.63 for both N = 100 and N = 1000, so only the
    // floor-error bound separates them.
    EXPECT_LE(r3, std::fabs(630.0 / 1000.0 - kTheta) + 1e-15);
  }
}

TEST(Scenery, ExponentialWindows) {
  const SymbolWord c{2, std::vector<int>(300, 0)};
  const EmpiricalTriple t = empirical_measures_exponential(c, 5, kTheta, 2);
  EXPECT_EQ(t.nu.marginal(2)[0], 1.0);
  EXPECT_EQ(t.eta.marginal(2)[0], 1.0);
  const EmpiricalTriple first = empirical_measures_exponential(c, 1, kTheta, 1);
  EXPECT_EQ(first.nu.first, 1u);
  EXPECT_EQ(first.nu.last, 1u);
  for (int k = 4; k <= 12; ++k) {
    const double a = std::floor(std::pow(kTheta, -(k - 1)));
    const double b = std::floor(std::pow(kTheta, -k));
    EXPECT_NEAR(a / b, kTheta, 0.6 / a + 1.0 / b);
  }
  EXPECT_THROW(empirical_measures_exponential(c, 20, kTheta, 2), Error);
}

TEST(Scenery, SubsequenceSelection) {
  const SymbolWord c{2, std::vector<int>(400, 1)};
  const SubsequenceSelection all = select_entropy_subsequence(c, 10, kTheta, 0.0);
  EXPECT_EQ(all.selected.size(), 10u);
  std::mt19937_64 rng(44);
  for (int i = 0; i < 20; ++i) {
    const SubsequenceSelection s = select_entropy_subsequence(random_word(rng, 1000), 14, kTheta, 0.0);
    EXPECT_GE(s.min_concavity_slack, -1e-9);
  }
}

TEST(Scenery, GibbsChainEqualityCases) {
  // Uniform-row carpet, row-uniform vectors: the packing chain is tight.
  const Carpet u = Carpet::create(3, 2, {{0, 0}, {1, 1}});
  const std::vector<double> half{0.5, 0.5};
  const GibbsChains g = gibbs_chains(u, half, half);
  EXPECT_NEAR(g.rhs_packing_form, dim_box_packing(u), 1e-12);
  EXPECT_TRUE(g.hard_ok);
  // nu_j proportional to a(j)^theta: the Hausdorff chain is tight.
  const Carpet c = example();
  const double z = std::pow(2.0, kTheta) + 1.0;
  const std::vector<double> hv{std::pow(2.0, kTheta) / z, 1.0 / z};
  const GibbsChains h = gibbs_chains(c, hv, hv);
  EXPECT_NEAR(h.rhs_hausdorff_form, dim_hausdorff(c), 1e-12);
  EXPECT_NEAR(h.slack_gibbs_hausdorff, 0.0, 1e-12);
  EXPECT_THROW(gibbs_chains(c, std::vector<double>{1.0}, hv), Error);
}

TEST(Scenery, GibbsChainsFuzz) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Carpet c = example();
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const std::vector<double> nu{a, 1 - a};
    const std::vector<double> eta{b, 1 - b};
    ASSERT_TRUE(gibbs_chains(c, nu, eta).hard_ok);
  }
}

TEST(Scenery, BoundChainReport) {
  std::mt19937_64 rng(46);
  const EmpiricalTriple t = empirical_measures_linear(random_word(rng, 5000), 4000, kTheta, 6);
  const BoundChainReport r = bound_chain_report(example(), t, 6);
  EXPECT_TRUE(r.hard_assertions_ok);
  EXPECT_EQ(r.rate_curve.size(), 6u);
  EXPECT_NEAR(r.h_est, std::log(2.0), 0.01);
  EXPECT_THROW(bound_chain_report(example(), t, 7), Error);
  SymbolWord bad{2, std::vector<int>(100, 1)};
  EXPECT_THROW(bound_chain_report(Carpet::create(3, 2, {{0, 0}}),
                                  empirical_measures_linear(bad, 50, kTheta, 2), 2),
               Error);
}

TEST(Scenery, PointMassNuOnSingleDigitRow) {
  const SymbolWord w{2, std::vector<int>(100, 1)};
  const BoundChainReport r = bound_chain_report(example(), empirical_measures_linear(w, 50, kTheta, 2), 2);
  EXPECT_NEAR(r.rhs_keyprop2, r.h_est / std::log(2.0), 1e-15);
  EXPECT_LE(r.rhs_keyprop2, r.dim_h);
}
