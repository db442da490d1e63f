#pragma once

#include <vector>

#include "wflow/fock.hpp"

namespace wflow {

/// Dimensionless parameters of the open driven Duffing system. The harmonic
/// oscillator is the special case lambda = drive_amplitude = 0.
struct SystemParams {
  double lambda = 0.0;           // quartic potential strength
  double drive_amplitude = 0.0;  // F
  double drive_frequency = 0.0;  // omega_d (in units of omega0)
  double gamma = 0.0;            // energy damping rate
  double nbar = 0.0;             // thermal occupation of the bath

  void validate() const;

  double drive_period() const;  // 2 pi / omega_d
};

/// Free oscillation period tau = 2 pi in dimensionless time.
inline constexpr double kFreePeriod = 6.283185307179586476925286766559;

/// H(t) = (x^2 + p^2)/2 + (lambda/4) x^4 - x F cos(omega_d t),
/// built from the truncated x and p operator matrices.
OperatorMatrix hamiltonian(const FockSpace& space, const SystemParams& params, double t);

/// Full master-equation right-hand side
///   d rho/dt = -i[H, rho]
///            + (gamma/2)(nbar+1)(2 a rho a' - a'a rho - rho a'a)
///            + (gamma/2) nbar   (2 a' rho a - a a' rho - rho a a').
/// The result is Hermitian and traceless to machine precision.
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const SystemParams& params, double t);

/// Snapshot record of an integration run.
struct Trajectory {
  std::vector<double> times;          // strictly increasing, on the dt grid
  std::vector<DensityMatrix> states;  // same length
  SystemParams params;

  /// Index of the snapshot nearest to t; throws if |times[i] - t| > tol.
  int index_at(double t, double tol) const;
};

struct IntegrationDiagnostics {
  double max_trace_drift = 0.0;
  double max_top_occupancy = 0.0;
  long steps = 0;
};

/// Fixed-step classical RK4 on the matrix ODE, with H(t) sampled at the
/// substage times and rho re-symmetrized every step. Snapshots are taken at
/// the grid times nearest each requested time and recorded exactly.
/// Throws TruncationError if the trace drifts by more than 1e-4 or the
/// highest retained level's occupancy exceeds 1e-6.
Trajectory integrate(const DensityMatrix& rho0, const SystemParams& params, double t_final,
                     double dt, const std::vector<double>& snapshot_times,
                     IntegrationDiagnostics* diagnostics = nullptr);

struct SteadyStateCheck {
  double distance = 0.0;  // max-entrywise difference between the two snapshots
  bool steady = false;
  double t_late = 0.0;    // times of the compared pair
  double t_early = 0.0;
};

/// Compares the last snapshot against the one a period earlier
/// (snapshots must exist within one period/1000 of both times).
SteadyStateCheck steady_state_check(const Trajectory& traj, double period, double tol);

}  // namespace wflow
