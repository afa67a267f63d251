#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "wittenlab/rankone.hpp"
#include "wittenlab/transforms.hpp"

using namespace wittenlab;

static void BM_PushnitskiExact(benchmark::State& state) {
  const StepFunction xi({-1.0, 0.0, 1.0}, {0.0, 1.0, 2.0, 0.0});
  double lam = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(pushnitski_at(xi, lam));
}
BENCHMARK(BM_PushnitskiExact);

static void BM_PushnitskiQuadrature(benchmark::State& state) {
  const auto f = ScalarFunction::indicator(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pushnitski_quadrature(f, 2.0));
}
BENCHMARK(BM_PushnitskiQuadrature);

static void BM_AbelF(benchmark::State& state) {
  auto f = [](double l) { return std::exp(-l); };
  for (auto _ : state) benchmark::DoNotOptimize(abel_F(f, 1.3));
}
BENCHMARK(BM_AbelF);

static void BM_OpTComplex(benchmark::State& state) {
  const auto f = ScalarFunction::indicator(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(op_T_complex(f, {-1e-4, 0.0}));
}
BENCHMARK(BM_OpTComplex);

static void BM_XiAlpha(benchmark::State& state) {
  std::vector<Atom> atoms;
  for (int i = 0; i < state.range(0); ++i) atoms.push_back({-3.0 + 0.6 * i, 0.5});
  const DiscreteMeasure mu(atoms);
  for (auto _ : state) benchmark::DoNotOptimize(xi_alpha(mu, 1.0, 0.37, 1e-6));
}
BENCHMARK(BM_XiAlpha)->Arg(1)->Arg(10);
