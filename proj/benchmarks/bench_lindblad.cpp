#include <benchmark/benchmark.h>

#include <wflow/lindblad.hpp>

using namespace wflow;

namespace {

SystemParams duffing_params(double nbar = 0.0) {
  SystemParams p;
  p.lambda = 0.05;
  p.drive_amplitude = 0.092;
  p.drive_frequency = 1.09;
  p.gamma = 0.01;
  p.nbar = nbar;
  return p;
}

void BM_rhs_definitional(benchmark::State& state) {
  const FockSpace space(int(state.range(0)));
  const auto rho = coherent_state(space, Complex(0.8, 0.3));
  const auto params = duffing_params();
  for (auto _ : state) benchmark::DoNotOptimize(lindblad_rhs(rho, params, 0.4));
}
BENCHMARK(BM_rhs_definitional)->Arg(20)->Arg(40)->Arg(60);

void BM_rk4_step(benchmark::State& state) {
  // One fixed-step RK4 step through integrate() (4 structured RHS evaluations).
  const FockSpace space(int(state.range(0)));
  const auto rho = coherent_state(space, Complex(0.8, 0.3));
  const auto params = duffing_params(1.5);
  const double dt = params.drive_period() / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(rho, params, dt, dt, {dt}));
}
BENCHMARK(BM_rk4_step)->Arg(20)->Arg(40)->Arg(60);

void BM_drive_period(benchmark::State& state) {
  const FockSpace space(int(state.range(0)));
  const auto rho = coherent_state(space, Complex(0.8, 0.3));
  const auto params = duffing_params();
  const double tau_d = params.drive_period();
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(rho, params, tau_d, tau_d / 1000.0, {tau_d}));
}
BENCHMARK(BM_drive_period)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
