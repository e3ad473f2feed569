#include <benchmark/benchmark.h>

#include <random>

#include "drstokes/exterior.hpp"
#include "drstokes/poly_form.hpp"
#include "drstokes/stokes_blocks.hpp"

using namespace drstokes;

namespace {

// Normal form of S Psi_r - I with abstract matrices; arg: q.
void BM_RightInverse(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const BlockMatrix m = build_stokes(4, q, q, CoefficientMode::Abstract) *
                            build_psi_right(4, q, q, CoefficientMode::Abstract) -
                        BlockMatrix::identity(4, q);
  for (auto _ : state) benchmark::DoNotOptimize(m.normalized());
}
BENCHMARK(BM_RightInverse)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_Defect(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_defect(4, q, CoefficientMode::Abstract));
}
BENCHMARK(BM_Defect)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

// Exact Hodge Laplacian of a random polynomial 2-form in R^4.
void BM_HodgeLaplacian(benchmark::State& state) {
  std::mt19937 rng(3);
  const PolyForm u = random_poly_form(4, 2, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hodge_laplacian(u));
}
BENCHMARK(BM_HodgeLaplacian)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
