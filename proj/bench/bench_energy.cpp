// Serial reference vs blocked OpenMP energy-distance test.
//
//   ./bench_energy --benchmark_filter=Energy
//
// The serial reference is O(N^2 B) with B permutations; the blocked version shares one
// distance pass across all permutations.

#include <benchmark/benchmark.h>

#include "equisym/energy.hpp"
#include "equisym/random.hpp"

namespace {

Eigen::MatrixXd gaussian(std::size_t n, int d, std::uint64_t seed) {
  equisym::RandomSource rng(seed);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), d);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  return m;
}

void BM_EnergySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd a = gaussian(n, 15, 1), b = gaussian(n, 15, 2);
  for (auto _ : state) benchmark::DoNotOptimize(equisym::energy_test_serial(a, b, {200, 3}).p_value);
  state.SetComplexityN(state.range(0));
}

void BM_EnergyParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd a = gaussian(n, 15, 1), b = gaussian(n, 15, 2);
  for (auto _ : state) benchmark::DoNotOptimize(equisym::energy_test(a, b, {200, 3}).p_value);
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_EnergySerial)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyParallel)->Arg(250)->Arg(500)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
