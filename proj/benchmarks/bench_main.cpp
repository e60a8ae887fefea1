#include <benchmark/benchmark.h>

#include <cmath>

#include "qfdense/diophantine.hpp"
#include "qfdense/solver.hpp"
#include "qfdense/weyl_sums.hpp"

using namespace qfdense;

namespace {

const FixedReal& sqrt2() {
  static const FixedReal v = FixedReal::sqrt(2);
  return v;
}

void BM_WeylSum(benchmark::State& state) {
  const FixedReal beta = FixedReal::from_rational(Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_sum(3, sqrt2(), beta, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeylSum)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_CountOrbitHits(benchmark::State& state) {
  const FixedReal zero;
  const TorusPoint2 v0 = TorusPoint2::reduce(zero, zero);
  const std::int64_t T = state.range(0);
  const double delta = std::pow(double(T), -0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_orbit_hits(sqrt2(), zero, zero, v0, T, delta, {1}));
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_CountOrbitHits)->RangeMultiplier(10)->Range(10000, 1000000)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  const ShiftVector xi(sqrt2(), FixedReal::sqrt(3), FixedReal::from_rational(Rational(1, 2)));
  OracleOptions opts;
  opts.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_values_bruteforce(TernaryForm::standard(), xi, FixedReal::pi(),
                                                     state.range(0), 0.1, opts));
  }
}
BENCHMARK(BM_BruteForceOracle)
    ->Args({20, 1})
    ->Args({50, 1})
    ->Args({50, 4})
    ->Unit(benchmark::kMillisecond);

void BM_FindSolutions(benchmark::State& state) {
  const ShiftVector xi(sqrt2(), FixedReal(), FixedReal());
  SolveParams p;
  p.T = state.range(0);
  p.delta = std::pow(double(p.T), -0.1);
  for (auto _ : state) benchmark::DoNotOptimize(find_solutions(xi, FixedReal(), p));
}
BENCHMARK(BM_FindSolutions)->RangeMultiplier(100)->Range(10000, 100000000)->Unit(benchmark::kMillisecond);

void BM_EstimateKappa(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_kappa(sqrt2(), Integer(1000000)));
}
BENCHMARK(BM_EstimateKappa)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
