#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wflow/config.hpp"
#include "wflow/snapshot.hpp"

namespace wflow {

/// Transform + flows + regions + diagnostics for one state.
SnapshotRecord build_snapshot_record(const DensityMatrix& rho, double t,
                                     const SystemParams& params, const PhaseSpaceGrid& grid);

struct StrobeFrame {
  double t = 0.0;
  double distance_from_previous = -1.0;  // < 0 for the first frame
};

struct RunResult {
  std::string output_dir;
  std::vector<std::string> snapshot_files;  // parallel to snapshots
  std::vector<std::string> figure_files;
  std::string report_file;
  Trajectory trajectory;                 // requested snapshots only
  std::vector<SnapshotRecord> snapshots;
  std::vector<double> continuity_residuals;  // per snapshot; NaN where undefined
  std::vector<StrobeFrame> strobe_frames;
};

/// Runs the full pipeline: integrate, transform, decompose flows, detect
/// regions, persist one snapshot container per time plus report.json, and
/// render figures when configured. Deterministic for a fixed config.
/// The WFLOW_OUTPUT_DIR environment variable overrides config.output_dir.
RunResult run(const ExperimentConfig& config);

/// Runs the config with strobing at the given period (figures every period
/// from strobe window start, steady-state distances appended to the report).
RunResult strobe(ExperimentConfig config, double period);

/// Human-readable summary of a completed run directory (reads report.json).
std::string report_text(const std::string& run_dir);

/// Name + description of every preset config in a directory, sorted by name.
std::vector<std::pair<std::string, std::string>> list_presets(const std::string& presets_dir);

}  // namespace wflow
