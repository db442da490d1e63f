#pragma once

#include <vector>

#include "wflow/lindblad.hpp"

namespace wflow {

struct ClassicalState {
  double x = 0.0;
  double p = 0.0;
  double t = 0.0;
};

struct ClassicalDerivative {
  double dx = 0.0;
  double dp = 0.0;
};

/// Deterministic drift of the damping + Duffing system flows:
///   dx/dt = p - (gamma/2) x
///   dp/dt = -x - lambda x^3 + F cos(omega_d t) - (gamma/2) p.
ClassicalDerivative classical_rhs(const ClassicalState& state, const SystemParams& params);

/// One classical RK4 step of size dt.
ClassicalState classical_step(const ClassicalState& state, const SystemParams& params, double dt);

/// Mechanical energy p^2/2 + x^2/2 + lambda x^4/4.
double classical_energy(const ClassicalState& state, const SystemParams& params);

struct SteadyAmplitudeOptions {
  int n_initial = 16;            // initial conditions on a radius 0..ring_max ring
  double ring_max = 4.0;
  int settle_periods = 600;      // drive periods before measuring
  int measure_periods = 10;      // periods over which max|x| is recorded
  int steps_per_period = 256;
  double cluster_tol = 0.02;     // amplitudes within this merge into one cluster
  double drift_tol = 0.01;       // per-IC convergence requirement over the window
};

struct SteadyAmplitudes {
  std::vector<double> amplitudes;       // cluster representatives, ascending
  std::vector<double> raw_amplitudes;   // one per initial condition
  std::vector<bool> converged;          // per initial condition
};

/// Integrates a basket of initial conditions to the driven steady state and
/// clusters the resulting oscillation amplitudes max|x|. Initial conditions
/// whose amplitude still drifts more than drift_tol across the measurement
/// window are flagged unconverged and excluded from the clusters.
SteadyAmplitudes steady_amplitudes(const SystemParams& params,
                                   const SteadyAmplitudeOptions& options = {});

}  // namespace wflow
