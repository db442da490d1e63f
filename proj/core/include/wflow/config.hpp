#pragma once

#include <string>
#include <vector>

#include "wflow/fock.hpp"
#include "wflow/lindblad.hpp"
#include "wflow/phase_space.hpp"

namespace wflow {

enum class SystemKind { harmonic, duffing };

enum class FlowView { total, sys, damp, diff };

std::string to_string(SystemKind kind);
std::string to_string(FlowView view);
SystemKind system_kind_from_string(const std::string& s);
FlowView flow_view_from_string(const std::string& s);

struct InitialStateSpec {
  enum class Kind { fock, coherent, cat };
  Kind kind = Kind::fock;
  int n = 0;                // fock
  Complex alpha{0.0, 0.0};  // coherent
  double separation = 0.0;  // cat
};

/// Strobe figure series at t = k * period for t >= window_start, with the
/// steady-state distance between consecutive frames appended to the report.
struct StrobeSpec {
  double period = 0.0;  // <= 0 disables strobing
  double window_start = 0.0;
};

struct ExperimentConfig {
  std::string name;
  std::string description;
  SystemKind system = SystemKind::harmonic;
  InitialStateSpec initial_state;
  SystemParams params;
  int truncation = 40;
  PhaseSpaceGrid grid{-6.0, 6.0, -6.0, 6.0, 256, 256};
  double dt = 0.0;
  double t_final = 0.0;
  std::vector<double> snapshot_times;
  std::vector<FlowView> flow_views{FlowView::total};
  std::string output_dir = "runs/out";
  bool render_figures = false;
  double color_max = 0.0;  // 0: symmetric per-snapshot normalization at max|W|
  StrobeSpec strobe;

  /// Throws ConfigError on inconsistency.
  void validate() const;

  DensityMatrix make_initial_state() const;
};

/// Reads a JSON config file. Times may be given in units of the free
/// oscillation period ("time_unit": "tau"), the drive period ("tau_d"),
/// or dimensionless time ("absolute", default).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text, const std::string& origin);

}  // namespace wflow
