#include <benchmark/benchmark.h>

#include <vector>

#include "wittenlab/model.hpp"

using namespace wittenlab;

namespace {

OperatorPath tanh_path() {
  return build_path(SymMatrix::diagonal(std::vector<double>{-1.0}), SymMatrix::diagonal(std::vector<double>{2.0}),
                    Profile::logistic());
}

}  // namespace

// Assembly plus both band eigendecompositions.
static void BM_Discretize(benchmark::State& state) {
  const auto path = tanh_path();
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(path, 0.02 * static_cast<double>(N - 1), N));
}
BENCHMARK(BM_Discretize)->Arg(501)->Arg(1001)->Arg(2001)->Unit(benchmark::kMillisecond);

static void BM_DeltaR(benchmark::State& state) {
  const auto m = discretize(tanh_path(), 40.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(delta_r(m, -0.02));
}
BENCHMARK(BM_DeltaR);
