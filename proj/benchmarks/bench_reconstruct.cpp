#include <benchmark/benchmark.h>

#include "drstokes/green_homotopy.hpp"

using namespace drstokes;

namespace {

// Exterior-pole reconstruction at one interior point; args: dimension, nodes per axis.
void BM_Reconstruct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StokesSpec spec = StokesSpec::identity(n, 1, 1);
  const DomainSpec ball = DomainSpec::ball(n, 1.0);
  const HomotopyReconstructor rec(spec, ball);
  std::vector<double> pole(n, 0.0), x(n, 0.1);
  pole[0] = 2;
  pole[1] = 0.5;
  const AnalyticSolution sol = make_solution("exterior_pole", spec, pole);
  const BoundaryTrace trace = sample_trace(boundary_quadrature(ball, static_cast<int>(state.range(1))), sol.field);
  for (auto _ : state) benchmark::DoNotOptimize(rec.reconstruct(trace, x));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(trace.quadrature.size()));
}
BENCHMARK(BM_Reconstruct)->Args({2, 48})->Args({3, 16})->Args({3, 48})->Unit(benchmark::kMillisecond);

void BM_GreenIdentity(benchmark::State& state) {
  const StokesSpec spec = StokesSpec::scalar_top(3, 1, 2.0, 3.0);
  const auto u = manufactured_tuple(spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_green_identity(spec, DomainSpec::ball(3, 1.0), static_cast<int>(state.range(0)), u, u));
}
BENCHMARK(BM_GreenIdentity)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
