#pragma once

#include "wflow/lindblad.hpp"
#include "wflow/phase_space.hpp"
#include "wflow/wigner.hpp"

namespace wflow {

/// J_HO = (p W, -x W).
VectorField flow_harmonic(const ScalarField& w);

/// J_Duff = (p W, [-x + F cos(w_d t) - lambda x^3] W + (lambda/4) x d^2W/dp^2).
/// Reduces exactly to flow_harmonic for lambda = F = 0.
VectorField flow_duffing(const ScalarField& w, const SystemParams& params, double t);

/// J_damp = -(gamma/2) (x W, p W).
VectorField flow_damp(const ScalarField& w, const SystemParams& params);

/// J_diff = -(gamma/2)(nbar + 1/2) (dW/dx, dW/dp).
VectorField flow_diff(const ScalarField& w, const SystemParams& params);

/// Named bundle of the system/damping/diffusion flows and their sum.
struct FlowDecomposition {
  VectorField j_sys;
  VectorField j_damp;
  VectorField j_diff;
  VectorField j_total;  // entrywise sum of the three, by construction
  double t = 0.0;
  SystemParams params;
};

FlowDecomposition decompose_flow(const ScalarField& w, const SystemParams& params, double t);

/// div J = d(jx)/dx + d(jp)/dp with the same 4th-order stencils.
ScalarField divergence(const VectorField& j);

struct ContinuityResidual {
  double absolute = 0.0;    // RMS of dW/dt + div J over the interior
  double normalizer = 0.0;  // RMS of div J over the interior
  double relative = 0.0;
  double field_scale = 0.0;  // RMS of W over the interior, for the stationarity test

  /// Relative residual when div J has meaningful scale against the field,
  /// absolute otherwise (stationary states, where both terms vanish).
  double value() const { return normalizer > 1e-4 * field_scale ? relative : absolute; }
};

/// Checks the continuity equation dW/dt + div J = 0 at snapshot `index`:
/// the time derivative is the centered difference of the snapshots at
/// index -+ stride (which must be equally spaced), div J is evaluated from
/// the transform at the center. Interior points only (two cells off the edge).
ContinuityResidual continuity_residual(const Trajectory& traj, const PhaseSpaceGrid& grid,
                                       int index, int stride = 1);

/// Same residual from prebuilt fields; used by the snapshot pipeline.
ContinuityResidual continuity_residual_fields(const ScalarField& w_prev, const ScalarField& w_next,
                                              double delta, const VectorField& j_total);

}  // namespace wflow
