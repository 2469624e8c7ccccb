#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "carpetlab/error.hpp"
#include "carpetlab/slicer.hpp"
#include "oracle.hpp"

using namespace carpetlab;

namespace {

Carpet example() { return Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}}); }

Carpet full_square() {
  std::vector<Digit> d;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) d.push_back({x, y});
  return Carpet::create(3, 2, d);
}

std::vector<oracle::Pair> pairs_of(const Carpet& c) {
  std::vector<oracle::Pair> out;
  for (const Digit& d : c.digits()) out.push_back({d.x, d.y});
  return out;
}

}  // namespace

TEST(Line, Factories) {
  const Line l = Line::from_exponent(3, 0.5, 0.1);
  EXPECT_NEAR(l.slope_value(), std::sqrt(3.0), 1e-15);
  EXPECT_LE(l.slope().lo, l.slope().hi);
  EXPECT_EQ(Line::from_exponent(3, 0.0, 0.0).slope_value(), 1.0);
  EXPECT_TRUE(Line::from_exponent(3, 0.2, 0.0, true).negative());
  EXPECT_NEAR(Line::from_slope(3, 9.0 * std::sqrt(3.0), 0).u0(), 0.5, 1e-12);
  EXPECT_THROW(Line::from_slope(3, 0.0, 0.0), Error);
  EXPECT_THROW(Line::from_slope(3, INFINITY, 0.0), Error);
  const Line r = Line::from_rational(3, 1, 3, 1, 2);
  EXPECT_LE(r.slope().lo, 1.0L / 3.0L);
  EXPECT_GE(r.slope().hi, 1.0L / 3.0L);
}

TEST(Slicer, FullSquareDiagonalCounts) {
  const auto counts = slice_counts(full_square(), Line::from_slope(3, 1.0, 0.0), 1, 10);
  ASSERT_EQ(counts.size(), 10u);
  for (const DepthCount& d : counts) {
    EXPECT_GE(d.count, 1ull << d.k) << d.k;
    EXPECT_LE(d.count, 3ull << d.k) << d.k;
  }
}

TEST(Slicer, FullSquareDiagonalSlope) {
  const auto counts = slice_counts(full_square(), Line::from_slope(3, 1.0, 0.0), 1, 12);
  const SliceEstimate e = estimate_slice_dimension(counts, 3, 2);
  EXPECT_NEAR(e.slope, 1.0, 0.05);
  EXPECT_FALSE(e.empty);
}

TEST(Slicer, SinglePointCarpet) {
  const Carpet c = Carpet::create(3, 2, {{0, 0}});
  for (const DepthCount& d : slice_counts(c, Line::from_exponent(3, 0.3, 0.0), 1, 12)) {
    EXPECT_EQ(d.count, 1u);
  }
}

TEST(Slicer, MissingLineIsEmpty) {
  const auto counts = slice_counts(example(), Line::from_exponent(3, 0.3, 5.0), 1, 10);
  for (const DepthCount& d : counts) EXPECT_EQ(d.count, 0u);
  const SliceEstimate e = estimate_slice_dimension(counts, 3, 2);
  EXPECT_TRUE(e.empty);
  EXPECT_EQ(e.slope, 0.0);
  EXPECT_THROW(frostman_approx(example(), Line::from_exponent(3, 0.3, 5.0), 6), Error);
}

TEST(Slicer, RatiosBoundedByMN) {
  const auto counts = slice_counts(example(), Line::from_exponent(3, 0.41, 0.13), 1, 14);
  for (std::size_t i = 1; i < counts.size(); ++i) {
    EXPECT_LE(counts[i].count, 6 * counts[i - 1].count);
  }
}

TEST(Slicer, EstimateExamples) {
  std::vector<DepthCount> geo;
  std::vector<DepthCount> flat;
  for (int k = 1; k <= 10; ++k) {
    geo.push_back({k, 1ull << k});
    flat.push_back({k, 1});
  }
  EXPECT_NEAR(estimate_slice_dimension(geo, 0, 2).slope, 1.0, 1e-12);
  EXPECT_NEAR(estimate_slice_dimension(flat, 0, 2).slope, 0.0, 1e-12);
  EXPECT_THROW(estimate_slice_dimension(std::vector<DepthCount>{{1, 2}, {2, 4}}, 0, 2), Error);
}

TEST(Slicer, BudgetExceeded) {
  SliceOptions o;
  o.budget = 50;
  EXPECT_THROW(slice_counts(full_square(), Line::from_slope(3, 1.0, 0.0), 1, 12, o), Error);
}

TEST(Slicer, ConservativeAgainstExactRationalCover) {
  std::mt19937_64 rng(31);
  const Carpet product = Carpet::create(3, 2, {{0, 0}, {2, 0}, {0, 1}, {2, 1}});
  for (const Carpet& c : {example(), full_square(), product}) {
    for (int i = 0; i < 100; ++i) {
      long long a = static_cast<long long>(rng() % 19) - 9;
      if (a == 0) a = 2;
      const long long b = 1 + static_cast<long long>(rng() % 9);
      const long long cc = static_cast<long long>(rng() % 19) - 9;
      const long long d = 1 + static_cast<long long>(rng() % 9);
      const int k = 1 + static_cast<int>(rng() % 6);
      const Line line = Line::from_rational(3, a, b, cc, d);
      const SliceCover cover = slice_cover(c, line, k);
      std::set<std::tuple<std::uint64_t, std::uint64_t>> got;
      int p = 0;
      for (const CoverCell& cell : cover.cells) {
        got.insert({cell.x_index, cell.y_index});
        p = cell.p;
      }
      const RotationOrbit orbit = RotationOrbit::for_carpet(c, line.u0());
      p = static_cast<int>(orbit.return_count(static_cast<std::uint64_t>(k)));
      const auto exact = oracle::exact_cover(3, 2, pairs_of(c), p, k, oracle::Q(a, b), oracle::Q(cc, d));
      ASSERT_TRUE(std::includes(got.begin(), got.end(), exact.begin(), exact.end()))
          << a << "/" << b << " x + " << cc << "/" << d << " depth " << k;
    }
  }
}

TEST(Slicer, CoverIsNestedAndDeterministic) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Line line = Line::from_exponent(3, u(rng), 0.7 * u(rng), i % 3 == 0);
    for (int k = 1; k <= 9; ++k) {
      const SliceCover deep = slice_cover(example(), line, k);
      const SliceCover shallow = slice_cover(example(), line, k - 1);
      std::set<CoverCell> parents(shallow.cells.begin(), shallow.cells.end());
      for (const CoverCell& cell : deep.cells) {
        ASSERT_FALSE(shallow.cells.empty());
        const int dp = cell.p - shallow.cells.front().p;
        const CoverCell parent{cell.x_index / checked_pow(3, dp), cell.y_index / 2, cell.p - dp, k - 1};
        ASSERT_TRUE(parents.count(parent)) << "k=" << k;
      }
      EXPECT_EQ(slice_cover(example(), line, k).cells, deep.cells);
      EXPECT_EQ(deep.counts.back().count, deep.cells.size());
    }
  }
}

TEST(Slicer, InflationOnlyGrowsTheCover) {
  const Line line = Line::from_exponent(3, 0.37, 0.2);
  SliceOptions wide;
  wide.inflation = 1e-3;
  for (int k = 1; k <= 10; ++k) {
    const auto a = slice_cover(example(), line, k).cells;
    const auto b = slice_cover(example(), line, k, wide).cells;
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST(Slicer, FrostmanApproxOnDiagonal) {
  const DiscreteMeasure mu = frostman_approx(full_square(), Line::from_slope(3, 1.0, 0.0), 12);
  EXPECT_NEAR(mu.total_mass(), 1.0, 1e-12);
  EXPECT_GE(mu.size(), 4096u);
  EXPECT_LE(mu.size(), 3u * 4096u);
  const auto counts = slice_counts(full_square(), Line::from_slope(3, 1.0, 0.0), 1, 12);
  const double est = estimate_slice_dimension(counts, 3, 2).slope;
  // stay well above the atom scale: levels near the depth see the cover band, not the line
  EXPECT_NEAR(finite_scale_dimension(mu, 2, 2, 6), est, 0.05);
  const DiscreteMeasure pt = frostman_approx(Carpet::create(3, 2, {{0, 0}}), Line::from_exponent(3, 0.5, 0.0), 5);
  EXPECT_EQ(pt.size(), 1u);
}

TEST(Slicer, BoundComparisonAttached) {
  const SliceEstimate e = estimate_slice_dimension(
      slice_counts(example(), Line::from_exponent(3, 0.5, 0.1), 1, 12), 3, example());
  EXPECT_NEAR(e.bounds.theorem_p, 0.5296286681, 1e-9);
  EXPECT_TRUE(e.bounds.hypothesis_met);
  EXPECT_GE(e.slope, 0.0);
}

TEST(Slicer, TransposedLineDescribesTheSameSet) {
  const Line l = Line::from_slope(3, 2.0, 0.25);
  const Line t = l.transposed(3);
  EXPECT_NEAR(t.slope_value(), 0.5, 1e-15);
  EXPECT_NEAR(t.intercept_value(), -0.125, 1e-15);
}
