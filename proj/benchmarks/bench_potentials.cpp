#include <benchmark/benchmark.h>

#include <random>

#include "drstokes/bump.hpp"
#include "drstokes/grid_potentials.hpp"
#include "drstokes/stokes_assembly.hpp"

using namespace drstokes;

namespace {

GridFunction bump_samples(const GridSpec& g) {
  std::mt19937_64 rng(1);
  return sample(random_bump_form(g.dim(), 0, rng, 0.1, 0.5, 0.6), g)[0];
}

// Newtonian convolution, args: dimension, nodes per axis, method (0 fft, 1 direct).
void BM_Convolution(benchmark::State& state) {
  const GridSpec g = GridSpec::cube(static_cast<int>(state.range(0)), 1.0, static_cast<int>(state.range(1)));
  const ConvolutionPlan plan(g, KernelKind::Newtonian, state.range(2) ? ConvolutionMethod::Direct : ConvolutionMethod::Fft);
  const GridFunction u = bump_samples(g);
  for (auto _ : state) benchmark::DoNotOptimize(plan.apply(u));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.node_count()));
}
BENCHMARK(BM_Convolution)
    ->Args({2, 64, 0})->Args({2, 128, 0})->Args({2, 256, 0})->Args({2, 32, 1})
    ->Args({3, 24, 0})->Args({3, 48, 0})->Args({3, 16, 1})
    ->Unit(benchmark::kMillisecond);

void BM_PlanSetup(benchmark::State& state) {
  const GridSpec g = GridSpec::cube(static_cast<int>(state.range(0)), 1.0, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ConvolutionPlan(g, KernelKind::Biharmonic, ConvolutionMethod::Fft));
}
BENCHMARK(BM_PlanSetup)->Args({2, 128})->Args({3, 48})->Unit(benchmark::kMillisecond);

// One application of the identity-matrix bilateral fundamental solution, q = 1.
void BM_PsiApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PotentialPlans plans(GridSpec::cube(n, 1.0, static_cast<int>(state.range(1))));
  const GridBlockOperator psi = psi_identity_operator(n, 1);
  std::mt19937_64 rng(2);
  FormTuple f;
  for (int i = 0; i <= 1; ++i) f.push_back(sample(random_bump_form(n, 1 - i, rng, 0.1, 0.5, 0.6), plans.grid()));
  for (auto _ : state) benchmark::DoNotOptimize(psi.apply(plans, f));
}
BENCHMARK(BM_PsiApply)->Args({2, 128})->Args({3, 48})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
