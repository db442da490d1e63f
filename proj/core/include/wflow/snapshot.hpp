#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wflow/config.hpp"
#include "wflow/flow.hpp"
#include "wflow/negativity.hpp"
#include "wflow/phase_space.hpp"

namespace wflow {

struct SnapshotDiagnostics {
  double trace = 0.0;
  double purity = 0.0;
  double top_level_occupancy = 0.0;
  double negativity_volume = 0.0;
  double boundary_max_abs_w = 0.0;
};

/// Boundary-integral rate terms for one reported region; valid is false when
/// the region is too small for the line integrals to resolve.
struct RegionRateTerms {
  double quantum_term = 0.0;
  double diffusion_term = 0.0;
  bool valid = false;
};

/// Everything derived from one trajectory snapshot.
struct SnapshotRecord {
  double t = 0.0;
  SystemParams params;
  ScalarField wigner;
  FlowDecomposition flows;
  std::vector<NegativeRegion> regions;        // dust-filtered: |volume| >= 1e-8
  std::vector<RegionRateTerms> region_rates;  // parallel to regions
  SnapshotDiagnostics diagnostics;
};

/// Writes the snapshot container: magic "WFSNAP01", a little-endian uint64
/// header length, a JSON header, then per-field little-endian float64 arrays
/// in row-major (x-major) order: W first, then jx and jp of each requested
/// flow view. See docs/snapshot_format.md for the byte-exact layout.
void export_snapshot(const SnapshotRecord& record, const std::vector<FlowView>& views,
                     const std::string& path);

struct LoadedSnapshot {
  double t;
  PhaseSpaceGrid grid;
  SystemParams params;
  ScalarField w;
  std::vector<std::pair<FlowView, VectorField>> flows;
  std::string header_json;
  double color_max;  // normalization recorded at export time
};

LoadedSnapshot import_snapshot(const std::string& path);

}  // namespace wflow
