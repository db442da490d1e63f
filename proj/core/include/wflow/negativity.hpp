#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wflow/flow.hpp"
#include "wflow/lindblad.hpp"
#include "wflow/phase_space.hpp"

namespace wflow {

/// One connected W < 0 component of a Wigner field.
struct NegativeRegion {
  std::vector<std::pair<int, int>> cells;  // (ix, ip) grid points, 4-connected
  /// Closed boundary polylines from marching squares; the region interior lies
  /// left of the traversal direction, so outward normals are right of it.
  /// An annulus carries two loops (outer + inner), a disc one.
  std::vector<std::vector<std::array<double, 2>>> boundary;
  double area = 0.0;      // phase-space area (units of hbar), from the contour polygon
  double volume = 0.0;    // integral of W over the region, <= 0
  std::array<double, 2> centroid{0.0, 0.0};  // |W|-weighted
};

/// Connected components of {W < threshold} (threshold <= 0), boundaries via
/// marching squares with linear zero-crossing interpolation, sorted by
/// |volume| descending. Includes every component; reporting layers filter
/// numerical dust (|volume| < 1e-8) themselves.
std::vector<NegativeRegion> find_negative_regions(const ScalarField& w, double threshold = 0.0);

/// Integral of W over all points with W < 0.
double negativity_volume(const ScalarField& w);

/// Boundary-integral decomposition of d/dt (integral of W over a region):
///   quantum_term   = (lambda/4) sum ds n.(0,-x) d2W/dp2
///   diffusion_term = (gamma/2)(nbar+1/2) sum ds n.grad W
/// with n the outward normal of the W = 0 contour.
struct NegativityRate {
  double quantum_term = 0.0;
  double diffusion_term = 0.0;
  double total = 0.0;     // quantum_term + diffusion_term
  double fd_check = 0.0;  // centered finite difference of the volume, when available

  double relative_mismatch() const;
};

NegativityRate negativity_rate(const ScalarField& w, const SystemParams& params,
                               const NegativeRegion& region);

/// Evaluates the rate identity at time t: boundary terms at t against the
/// centered difference of the matched region's volume at t -+ delta.
/// The region is matched across the three snapshots by centroid proximity
/// (< 3 dx), falling back to maximal cell overlap; throws if it cannot be
/// tracked through the window.
NegativityRate rate_consistency_check(const Trajectory& traj, const PhaseSpaceGrid& grid,
                                      const SystemParams& params, double t, double delta);

struct FirstNegativity {
  bool found = false;
  double t = 0.0;
  std::array<double, 2> centroid{0.0, 0.0};  // dominant region at detection time
};

/// Earliest snapshot whose total negativity volume is below volume_threshold
/// (a negative number, e.g. -1e-4).
FirstNegativity first_negativity_time(const Trajectory& traj, const PhaseSpaceGrid& grid,
                                      double volume_threshold);

}  // namespace wflow
