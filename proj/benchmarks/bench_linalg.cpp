#include <benchmark/benchmark.h>

#include <random>

#include "wittenlab/banded.hpp"
#include "wittenlab/linalg.hpp"
#include "wittenlab/sampling.hpp"
#include "wittenlab/ssf.hpp"

using namespace wittenlab;

static void BM_JacobiEigh(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_symmetric(rng, static_cast<std::size_t>(state.range(0)), 0.1, 5.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiEigh)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);

// Free box-scheme H1, tridiagonal.
static void BM_BandedEigh(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  BandedSymMatrix m(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, i == 0 ? 1.0 : 2.0);
    if (i + 1 < n) m.set(i, i + 1, -1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(eigh_banded(m));
}
BENCHMARK(BM_BandedEigh)->Arg(501)->Arg(1001)->Arg(2001)->Unit(benchmark::kMillisecond);

static void BM_SsfViaLogdet(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ap = random_symmetric(rng, n, 0.2, 2.0);
  const auto am = random_symmetric(rng, n, 0.2, 2.0);
  std::vector<double> grid;
  for (int i = 0; i < 121; ++i) grid.push_back(-3.0 + 0.05 * i);
  for (auto _ : state) benchmark::DoNotOptimize(ssf_via_logdet(ap, am, 1e-5, grid));
}
BENCHMARK(BM_SsfViaLogdet)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
