#include <benchmark/benchmark.h>

#include <wflow/negativity.hpp>
#include <wflow/wigner.hpp>

using namespace wflow;

namespace {

void BM_find_negative_regions(benchmark::State& state) {
  const FockSpace space(40);
  const PhaseSpaceGrid grid(-6.0, 6.0, -6.0, 6.0, 256, 256);
  const auto w = wigner_transform(cat_state(space, 6.0), grid);
  for (auto _ : state) benchmark::DoNotOptimize(find_negative_regions(w));
}
BENCHMARK(BM_find_negative_regions);

void BM_negativity_rate(benchmark::State& state) {
  const FockSpace space(12);
  const PhaseSpaceGrid grid(-6.0, 6.0, -6.0, 6.0, 256, 256);
  const auto w = wigner_transform(fock_state(space, 2), grid);
  const auto regions = find_negative_regions(w);
  SystemParams p;
  p.gamma = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(negativity_rate(w, p, regions.front()));
}
BENCHMARK(BM_negativity_rate);

}  // namespace
