#include <benchmark/benchmark.h>

#include <wflow/wigner.hpp>

using namespace wflow;

namespace {

void BM_wigner_transform(benchmark::State& state) {
  const FockSpace space(int(state.range(0)));
  const int n = int(state.range(1));
  const auto rho = cat_state(space, 5.0);
  const PhaseSpaceGrid grid(-6.0, 6.0, -6.0, 6.0, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_transform(rho, grid));
}
BENCHMARK(BM_wigner_transform)
    ->Args({20, 128})
    ->Args({40, 256})
    ->Args({60, 256})
    ->Unit(benchmark::kMillisecond);

void BM_derivative_stencils(benchmark::State& state) {
  const int n = int(state.range(0));
  PhaseSpaceGrid grid(-6.0, 6.0, -6.0, 6.0, n, n);
  ScalarField f(grid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.values(i, j) = std::exp(-grid.x(i) * grid.x(i) - grid.p(j) * grid.p(j));
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_x(f));
    benchmark::DoNotOptimize(partial_p(f));
    benchmark::DoNotOptimize(partial_pp(f));
  }
}
BENCHMARK(BM_derivative_stencils)->Arg(256)->Arg(512);

}  // namespace
