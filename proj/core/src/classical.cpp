#include "wflow/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wflow {

ClassicalDerivative classical_rhs(const ClassicalState& s, const SystemParams& params) {
  ClassicalDerivative d;
  const double drive = params.drive_amplitude == 0.0
                           ? 0.0
                           : params.drive_amplitude * std::cos(params.drive_frequency * s.t);
  d.dx = s.p - 0.5 * params.gamma * s.x;
  d.dp = -s.x - params.lambda * s.x * s.x * s.x + drive - 0.5 * params.gamma * s.p;
  return d;
}

ClassicalState classical_step(const ClassicalState& s, const SystemParams& params, double dt) {
  const auto k1 = classical_rhs(s, params);
  const auto k2 = classical_rhs({s.x + 0.5 * dt * k1.dx, s.p + 0.5 * dt * k1.dp, s.t + 0.5 * dt}, params);
  const auto k3 = classical_rhs({s.x + 0.5 * dt * k2.dx, s.p + 0.5 * dt * k2.dp, s.t + 0.5 * dt}, params);
  const auto k4 = classical_rhs({s.x + dt * k3.dx, s.p + dt * k3.dp, s.t + dt}, params);
  return {s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          s.p + dt / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp), s.t + dt};
}

double classical_energy(const ClassicalState& s, const SystemParams& params) {
  return 0.5 * s.p * s.p + 0.5 * s.x * s.x + 0.25 * params.lambda * std::pow(s.x, 4);
}

SteadyAmplitudes steady_amplitudes(const SystemParams& params,
                                   const SteadyAmplitudeOptions& options) {
  params.validate();
  if (params.gamma <= 0.0)
    throw std::invalid_argument("steady_amplitudes: needs gamma > 0 to reach a steady state");

  const double period =
      params.drive_frequency > 0.0 ? params.drive_period() : kFreePeriod;
  const double dt = period / options.steps_per_period;

  SteadyAmplitudes out;
  out.raw_amplitudes.reserve(size_t(options.n_initial));
  out.converged.reserve(size_t(options.n_initial));

  for (int ic = 0; ic < options.n_initial; ++ic) {
    const double r = options.ring_max * double(ic) / std::max(1, options.n_initial - 1);
    const double theta = 2.0 * M_PI * double(ic) / options.n_initial;
    ClassicalState s{r * std::cos(theta), r * std::sin(theta), 0.0};

    for (long step = 0; step < long(options.settle_periods) * options.steps_per_period; ++step)
      s = classical_step(s, params, dt);

    // Per-period amplitude over the measurement window.
    std::vector<double> per_period(size_t(options.measure_periods), 0.0);
    for (int k = 0; k < options.measure_periods; ++k) {
      double amp = 0.0;
      for (int step = 0; step < options.steps_per_period; ++step) {
        s = classical_step(s, params, dt);
        amp = std::max(amp, std::abs(s.x));
      }
      per_period[size_t(k)] = amp;
    }
    const auto [lo, hi] = std::minmax_element(per_period.begin(), per_period.end());
    out.raw_amplitudes.push_back(*std::max_element(per_period.begin(), per_period.end()));
    out.converged.push_back(*hi - *lo <= options.drift_tol);
  }

  // Cluster the converged amplitudes.
  std::vector<double> sorted;
  for (size_t i = 0; i < out.raw_amplitudes.size(); ++i)
    if (out.converged[i]) sorted.push_back(out.raw_amplitudes[i]);
  std::sort(sorted.begin(), sorted.end());
  size_t k = 0;
  while (k < sorted.size()) {
    size_t end = k + 1;
    double sum = sorted[k];
    while (end < sorted.size() && sorted[end] - sorted[end - 1] <= options.cluster_tol) {
      sum += sorted[end];
      ++end;
    }
    out.amplitudes.push_back(sum / double(end - k));
    k = end;
  }
  return out;
}

}  // namespace wflow
