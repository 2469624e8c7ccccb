#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "carpetlab/carpet.hpp"
#include "carpetlab/measures.hpp"
#include "carpetlab/slicer.hpp"
#include "carpetlab/symbolic.hpp"

namespace {

using namespace carpetlab;

Carpet example() { return Carpet::create(3, 2, {{0, 0}, {2, 0}, {1, 1}}); }

Carpet full_square() {
  std::vector<Digit> d;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) d.push_back({x, y});
  return Carpet::create(3, 2, d);
}

void BM_SliceCountsExample(benchmark::State& state) {
  const Carpet c = example();
  const Line line = Line::from_exponent(3, 0.37, 0.21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(slice_counts(c, line, 1, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SliceCountsExample)->Arg(8)->Arg(12)->Arg(16);

void BM_SliceCountsFullSquare(benchmark::State& state) {
  const Carpet c = full_square();
  const Line line = Line::from_slope(3, 1.0, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(slice_counts(c, line, 1, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SliceCountsFullSquare)->Arg(8)->Arg(12);

void BM_GridEntropy(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Atom> atoms;
  for (int i = 0; i < state.range(0); ++i) atoms.push_back({u(rng), u(rng), 1.0});
  const DiscreteMeasure mu = DiscreteMeasure(std::move(atoms)).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(entropy(mu, GridPartition::square(2, 8)));
}
BENCHMARK(BM_GridEntropy)->Arg(1 << 10)->Arg(1 << 14);

void BM_ReturnScan(benchmark::State& state) {
  const Rotation rot = Rotation::from_exponents(3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_return_discrepancy(rot, static_cast<std::uint64_t>(state.range(0)), 100));
  }
}
BENCHMARK(BM_ReturnScan)->Arg(1000)->Arg(10000);

void BM_Analyze(benchmark::State& state) {
  const Carpet c = example();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(c));
}
BENCHMARK(BM_Analyze);

}  // namespace
BENCHMARK_MAIN();
