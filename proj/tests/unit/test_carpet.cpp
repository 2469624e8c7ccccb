#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "carpetlab/carpet.hpp"
#include "carpetlab/carpet_io.hpp"
#include "carpetlab/error.hpp"
#include "oracle.hpp"

using namespace carpetlab;

namespace {

Carpet example() { return Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}}); }

Carpet full(int m, int n) {
  std::vector<Digit> d;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < n; ++y) d.push_back({x, y});
  return Carpet::create(m, n, d);
}

std::vector<oracle::Pair> pairs_of(const Carpet& c) {
  std::vector<oracle::Pair> out;
  for (const Digit& d : c.digits()) out.push_back({d.x, d.y});
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::DomainError;
}

}  // namespace

TEST(Carpet, RowStatsOfExample) {
  const Carpet c = example();
  EXPECT_EQ(c.rows().row_count.at(0), 2);
  EXPECT_EQ(c.rows().row_count.at(1), 1);
  EXPECT_EQ(c.rows().total, 3);
  EXPECT_EQ(c.rows().occupied_rows, (std::vector<int>{0, 1}));
}

TEST(Carpet, TransposesWhenMSmallerThanN) {
  const Carpet c = Carpet::create(2, 3, {{0, 0}, {0, 2}, {1, 1}});
  EXPECT_EQ(c.m(), 3);
  EXPECT_EQ(c.n(), 2);
  EXPECT_TRUE(c.transposed());
  EXPECT_TRUE(c.contains(2, 0));
  EXPECT_TRUE(c.contains(1, 1));
}

TEST(Carpet, ValidationErrors) {
  EXPECT_EQ(code_of([] { Carpet::create(3, 2, {}); }), ErrorCode::EmptyDigits);
  EXPECT_EQ(code_of([] { Carpet::create(3, 2, {{3, 0}}); }), ErrorCode::DigitOutOfRange);
  EXPECT_EQ(code_of([] { Carpet::create(3, 2, {{0, -1}}); }), ErrorCode::DigitOutOfRange);
  EXPECT_EQ(code_of([] { Carpet::create(1, 2, {{0, 0}}); }), ErrorCode::BadExponent);
}

TEST(Carpet, DuplicateDigitsCollapse) {
  const Carpet c = Carpet::create(3, 2, {{0, 0}, {0, 0}, {1, 1}});
  EXPECT_EQ(c.digits().size(), 2u);
}

TEST(Carpet, Independence) {
  EXPECT_TRUE(independence_check(example()));
  EXPECT_FALSE(independent_exponents(4, 2));
  EXPECT_FALSE(independent_exponents(8, 4));
  EXPECT_FALSE(independent_exponents(3, 3));
  EXPECT_TRUE(independent_exponents(6, 4));
  EXPECT_FALSE(independent_exponents(27, 9));
}

TEST(Carpet, ExampleDimensionsAgainstOracle) {
  const Carpet c = example();
  const auto rows = oracle::rows_of(3, 2, pairs_of(c));
  EXPECT_NEAR(dim_hausdorff(c), oracle::dim_h(rows).convert_to<double>(), 1e-12);
  EXPECT_NEAR(dim_box_packing(c), oracle::dim_bp(rows).convert_to<double>(), 1e-12);
  EXPECT_NEAR(dim_star(c), oracle::dim_star(rows).convert_to<double>(), 1e-12);
  EXPECT_NEAR(dim_hausdorff(c), 1.34968, 1e-5);
  EXPECT_NEAR(dim_box_packing(c), 1.36907, 1e-5);
  EXPECT_NEAR(dim_star(c), 1.63093, 1e-5);
}

TEST(Carpet, ProductCarpetMatchesCantorPlusOne) {
  const Carpet c = Carpet::create(3, 2, {{0, 0}, {2, 0}, {0, 1}, {2, 1}});
  EXPECT_NEAR(dim_box_packing(c), 1.0 + std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_NEAR(dim_hausdorff(c), 1.0 + std::log(2.0) / std::log(3.0), 1e-12);
}

TEST(Carpet, FullSquareAndPoint) {
  const Carpet f = full(3, 2);
  EXPECT_DOUBLE_EQ(dim_hausdorff(f), 2.0);
  EXPECT_DOUBLE_EQ(dim_box_packing(f), 2.0);
  EXPECT_DOUBLE_EQ(dim_star(f), 2.0);
  EXPECT_DOUBLE_EQ(slice_bound(f, SliceKind::hausdorff).value, 1.0);
  const Carpet p = Carpet::create(3, 2, {{1, 1}});
  EXPECT_EQ(dim_hausdorff(p), 0.0);
  EXPECT_EQ(dim_star(p), 0.0);
  EXPECT_TRUE(slice_bound(p, SliceKind::packing).degenerate);
  EXPECT_EQ(slice_bound(p, SliceKind::packing).value, 0.0);
}

TEST(Carpet, SliceBoundsOfExample) {
  const Carpet c = example();
  const auto rows = oracle::rows_of(3, 2, pairs_of(c));
  const double expect_h =
      oracle::slice_bound(oracle::dim_h(rows), oracle::dim_star(rows)).convert_to<double>();
  EXPECT_NEAR(slice_bound(c, SliceKind::hausdorff).value, expect_h, 1e-12);
  EXPECT_NEAR(expect_h, 0.52215, 1e-4);
  EXPECT_NEAR(prior_bound(c), 0.63093, 1e-5);
  EXPECT_NEAR(marstrand_bound(1.34968), 0.34968, 1e-12);
  EXPECT_EQ(marstrand_bound(0.7), 0.0);
  EXPECT_EQ(slice_bound(Carpet::create(3, 2, {{0, 0}, {1, 1}}), SliceKind::hausdorff).value, 0.0);
}

TEST(Carpet, OptimizeLambda) {
  const LambdaOptimum o = optimize_lambda(1.63093, 1.36907);
  const auto [arg, best] = oracle::lambda_grid(1.63093, 1.36907);
  EXPECT_NEAR(o.lambda, arg, 1e-6);
  EXPECT_NEAR(o.bound, best, 1e-6);
  EXPECT_NEAR(o.lambda, 0.83945, 1e-5);
  EXPECT_NEAR(o.bound, 0.52963, 1e-5);
  const LambdaOptimum sq = optimize_lambda(2.0, 2.0);
  EXPECT_DOUBLE_EQ(sq.lambda, 1.0);
  EXPECT_DOUBLE_EQ(sq.bound, 1.0);
  EXPECT_EQ(optimize_lambda(1.0, 0.7).bound, 0.0);
  EXPECT_THROW(optimize_lambda(1.0, 1.5), Error);
  EXPECT_THROW(optimize_lambda(0.0, 0.0), Error);
}

TEST(Carpet, EqualsCaseIffUniformRows) {
  for (const auto& d : oracle::family_32()) {
    std::vector<Digit> digits;
    for (const auto& p : d) digits.push_back({p.x, p.y});
    const Carpet c = Carpet::create(3, 2, digits);
    const DimensionReport r = analyze(c);
    EXPECT_LE(r.dim_h, r.dim_bp + 1e-12);
    EXPECT_LE(r.dim_bp, r.dim_star + 1e-12);
    EXPECT_EQ(r.ahlfors_regular, c.rows().uniform());
    EXPECT_LE(r.slice_bound_h, r.slice_bound_p + 1e-12);
    EXPECT_LE(r.slice_bound_p, r.prior_bound + 1e-12);
  }
}

TEST(Carpet, TransposeGivesIdenticalReport) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const int m = std::uniform_int_distribution<int>(3, 7)(rng);
    const int n = std::uniform_int_distribution<int>(2, m - 1)(rng);
    std::vector<Digit> d;
    std::vector<Digit> t;
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < n; ++y)
        if (rng() % 3 == 0) {
          d.push_back({x, y});
          t.push_back({y, x});
        }
    if (d.empty()) continue;
    const DimensionReport a = analyze(Carpet::create(m, n, d));
    const DimensionReport b = analyze(Carpet::create(n, m, t));
    EXPECT_EQ(a.dim_h, b.dim_h);
    EXPECT_EQ(a.dim_bp, b.dim_bp);
    EXPECT_EQ(a.dim_star, b.dim_star);
    EXPECT_EQ(a.slice_bound_p, b.slice_bound_p);
  }
}

TEST(Carpet, EqualMNFlagsHypothesis) {
  const DimensionReport r = analyze(Carpet::create(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_FALSE(r.independent);
  EXPECT_DOUBLE_EQ(r.theta, 1.0);
  EXPECT_NEAR(r.dim_h, 1.0, 1e-12);
}

TEST(Carpet, GibbsRowFunctionals) {
  const Carpet c = example();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng);
    const std::vector<double> v{a, 1.0 - a};
    EXPECT_LE(packing_row_functional(c, v), dim_box_packing(c) + 1e-12);
    EXPECT_LE(hausdorff_row_functional(c, v), dim_hausdorff(c) + 1e-12);
  }
  const std::vector<double> pv{2.0 / 3.0, 1.0 / 3.0};
  EXPECT_NEAR(packing_row_functional(c, pv), dim_box_packing(c), 1e-12);
  const double t = std::log(2.0) / std::log(3.0);
  const double z = std::pow(2.0, t) + 1.0;
  const std::vector<double> hv{std::pow(2.0, t) / z, 1.0 / z};
  EXPECT_NEAR(hausdorff_row_functional(c, hv), dim_hausdorff(c), 1e-12);
}

TEST(CarpetIo, ParsesCommentsAndWhitespace) {
  const Carpet c = parse_carpet(std::string("# demo\n 3   2\n0 0 # origin\n\n2 0\n1 1\n"));
  EXPECT_EQ(c.digits().size(), 3u);
  EXPECT_EQ(parse_carpet(format_carpet(c)).digits().size(), 3u);
}

TEST(CarpetIo, MalformedInputIsParseError) {
  EXPECT_EQ(code_of([] { parse_carpet(std::string("3 2\n0 x\n")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_carpet(std::string("")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_carpet(std::string("3 2 1\n")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_carpet("/nonexistent/file.carpet"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_carpet(std::string("3 2\n")); }), ErrorCode::EmptyDigits);
}
