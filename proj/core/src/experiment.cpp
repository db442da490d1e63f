#include "wflow/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wflow/errors.hpp"
#include "wflow/render.hpp"

namespace wflow {

namespace fs = std::filesystem;
using nlohmann::json;

SnapshotRecord build_snapshot_record(const DensityMatrix& rho, double t,
                                     const SystemParams& params, const PhaseSpaceGrid& grid) {
  SnapshotRecord rec{t, params, wigner_transform(rho, grid),
                     FlowDecomposition{VectorField(grid), VectorField(grid), VectorField(grid),
                                       VectorField(grid), t, params},
                     {}, {}, {}};
  rec.flows = decompose_flow(rec.wigner, params, t);

  for (auto& region : find_negative_regions(rec.wigner)) {
    if (std::abs(region.volume) < 1e-8) continue;  // numerical dust
    RegionRateTerms rate;
    try {
      const NegativityRate r = negativity_rate(rec.wigner, params, region);
      rate = {r.quantum_term, r.diffusion_term, true};
    } catch (const std::runtime_error&) {
      rate.valid = false;  // too small to resolve
    }
    rec.regions.push_back(std::move(region));
    rec.region_rates.push_back(rate);
  }

  rec.diagnostics.trace = rho.trace_real();
  rec.diagnostics.purity = rho.purity();
  rec.diagnostics.top_level_occupancy = rho.top_level_occupancy();
  rec.diagnostics.negativity_volume = negativity_volume(rec.wigner);
  rec.diagnostics.boundary_max_abs_w = boundary_max_abs(rec.wigner);
  return rec;
}

namespace {

std::string snapshot_filename(size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "snapshot_%03zu.wfs", index);
  return buf;
}

json diagnostics_to_json(const SnapshotDiagnostics& d) {
  return json{{"trace", d.trace},
              {"purity", d.purity},
              {"top_level_occupancy", d.top_level_occupancy},
              {"negativity_volume", d.negativity_volume},
              {"boundary_max_abs_w", d.boundary_max_abs_w}};
}

json regions_to_json(const SnapshotRecord& rec) {
  json arr = json::array();
  for (size_t r = 0; r < rec.regions.size(); ++r) {
    const auto& region = rec.regions[r];
    json entry{{"area", region.area},
               {"volume", region.volume},
               {"centroid", {region.centroid[0], region.centroid[1]}},
               {"boundary_loops", region.boundary.size()}};
    if (rec.region_rates[r].valid) {
      entry["quantum_term"] = rec.region_rates[r].quantum_term;
      entry["diffusion_term"] = rec.region_rates[r].diffusion_term;
    }
    arr.push_back(std::move(entry));
  }
  return arr;
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  config.validate();

  RunResult result;
  result.output_dir = config.output_dir;
  if (const char* env = std::getenv("WFLOW_OUTPUT_DIR")) result.output_dir = env;

  std::error_code ec;
  fs::create_directories(result.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + result.output_dir + "'");

  // Snapshot schedule: requested times plus strobe frames.
  std::vector<double> strobe_times;
  if (config.strobe.period > 0.0) {
    const long k0 = std::lround(std::ceil(config.strobe.window_start / config.strobe.period - 1e-9));
    for (long k = std::max(0L, k0);; ++k) {
      const double t = double(k) * config.strobe.period;
      if (t > config.t_final * (1.0 + 1e-12) + 1e-12) break;
      strobe_times.push_back(std::min(t, config.t_final));
    }
  }
  std::vector<double> schedule = config.snapshot_times;
  schedule.insert(schedule.end(), strobe_times.begin(), strobe_times.end());

  const DensityMatrix rho0 = config.make_initial_state();
  IntegrationDiagnostics integ_diag;
  result.trajectory =
      integrate(rho0, config.params, config.t_final, config.dt, schedule, &integ_diag);

  const Trajectory& traj = result.trajectory;
  result.snapshots.reserve(traj.states.size());
  for (size_t i = 0; i < traj.states.size(); ++i)
    result.snapshots.push_back(
        build_snapshot_record(traj.states[i], traj.times[i], config.params, config.grid));

  // Continuity residual wherever a snapshot has equally spaced neighbors.
  const size_t n = result.snapshots.size();
  result.continuity_residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 1; i + 1 < n; ++i) {
    const double d_prev = traj.times[i] - traj.times[i - 1];
    const double d_next = traj.times[i + 1] - traj.times[i];
    if (std::abs(d_prev - d_next) > 1e-9 * std::max(d_prev, d_next)) continue;
    result.continuity_residuals[i] =
        continuity_residual_fields(result.snapshots[i - 1].wigner, result.snapshots[i + 1].wigner,
                                   d_next, result.snapshots[i].flows.j_total)
            .value();
  }

  // Persist snapshots (and figures when requested).
  for (size_t i = 0; i < n; ++i) {
    const std::string file = (fs::path(result.output_dir) / snapshot_filename(i)).string();
    export_snapshot(result.snapshots[i], config.flow_views, file);
    result.snapshot_files.push_back(file);
    if (config.render_figures) {
      for (FlowView view : config.flow_views) {
        std::ostringstream name;
        name << "fig_" << std::setw(3) << std::setfill('0') << i << "_" << to_string(view)
             << ".png";
        const std::string fig = (fs::path(result.output_dir) / name.str()).string();
        RenderOptions opts;
        opts.color_max = config.color_max;
        render_figure(result.snapshots[i], view, fig, opts);
        result.figure_files.push_back(fig);
      }
    }
  }

  // Strobe distances between consecutive frames.
  if (!strobe_times.empty()) {
    std::vector<size_t> frame_idx;
    for (double t : strobe_times) {
      const int idx = traj.index_at(t, config.dt);
      if (frame_idx.empty() || frame_idx.back() != size_t(idx)) frame_idx.push_back(size_t(idx));
    }
    for (size_t k = 0; k < frame_idx.size(); ++k) {
      StrobeFrame frame;
      frame.t = traj.times[frame_idx[k]];
      if (k > 0)
        frame.distance_from_previous = (traj.states[frame_idx[k]].entries() -
                                        traj.states[frame_idx[k - 1]].entries())
                                           .cwiseAbs()
                                           .maxCoeff();
      result.strobe_frames.push_back(frame);
    }
  }

  // Run-level report.
  json report;
  report["name"] = config.name;
  report["description"] = config.description;
  report["system"] = to_string(config.system);
  report["params"] = json{{"lambda", config.params.lambda},
                          {"drive_amplitude", config.params.drive_amplitude},
                          {"drive_frequency", config.params.drive_frequency},
                          {"gamma", config.params.gamma},
                          {"nbar", config.params.nbar}};
  report["truncation"] = config.truncation;
  report["dt"] = config.dt;
  report["t_final"] = config.t_final;
  report["integration"] = json{{"steps", integ_diag.steps},
                               {"max_trace_drift", integ_diag.max_trace_drift},
                               {"max_top_occupancy", integ_diag.max_top_occupancy}};
  report["color_normalization"] =
      config.color_max > 0.0 ? json(config.color_max) : json("symmetric per-snapshot max |W|");

  json snaps = json::array();
  for (size_t i = 0; i < n; ++i) {
    json s{{"t", traj.times[i]},
           {"file", fs::path(result.snapshot_files[i]).filename().string()},
           {"diagnostics", diagnostics_to_json(result.snapshots[i].diagnostics)},
           {"regions", regions_to_json(result.snapshots[i])}};
    if (std::isfinite(result.continuity_residuals[i]))
      s["continuity_residual"] = result.continuity_residuals[i];
    snaps.push_back(std::move(s));
  }
  report["snapshots"] = std::move(snaps);

  if (!result.strobe_frames.empty()) {
    json strobe_json;
    strobe_json["period"] = config.strobe.period;
    json frames = json::array();
    for (const auto& f : result.strobe_frames) {
      json entry{{"t", f.t}};
      if (f.distance_from_previous >= 0.0) entry["distance_from_previous"] = f.distance_from_previous;
      frames.push_back(std::move(entry));
    }
    strobe_json["frames"] = std::move(frames);
    report["strobe"] = std::move(strobe_json);
  }

  result.report_file = (fs::path(result.output_dir) / "report.json").string();
  std::ofstream out(result.report_file);
  if (!out) throw IoError("cannot write '" + result.report_file + "'");
  out << report.dump(2) << "\n";
  return result;
}

RunResult strobe(ExperimentConfig config, double period) {
  if (period <= 0.0) throw ConfigError("strobe: period must be > 0");
  config.strobe.period = period;
  config.render_figures = true;
  return run(config);
}

std::string report_text(const std::string& run_dir) {
  const fs::path report_path = fs::path(run_dir) / "report.json";
  std::ifstream in(report_path);
  if (!in) throw IoError("no report.json in '" + run_dir + "'");
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw IoError(std::string("cannot parse report.json: ") + e.what());
  }

  std::ostringstream os;
  os << "run: " << report.value("name", "?") << "  (" << report.value("system", "?") << ")\n";
  if (report.contains("description") && !report["description"].get<std::string>().empty())
    os << report["description"].get<std::string>() << "\n";
  const json& p = report["params"];
  os << "params: lambda=" << p.value("lambda", 0.0) << " F=" << p.value("drive_amplitude", 0.0)
     << " omega_d=" << p.value("drive_frequency", 0.0) << " gamma=" << p.value("gamma", 0.0)
     << " nbar=" << p.value("nbar", 0.0) << "  dim=" << report.value("truncation", 0) << "\n";
  if (report.contains("integration")) {
    const json& integ = report["integration"];
    os << "integration: " << integ.value("steps", 0L)
       << " steps, max trace drift " << integ.value("max_trace_drift", 0.0)
       << ", max top occupancy " << integ.value("max_top_occupancy", 0.0) << "\n";
  }
  os << "\n  t           trace        purity    neg.volume   regions  residual\n";
  for (const auto& s : report["snapshots"]) {
    const json& d = s["diagnostics"];
    os << "  " << std::setw(10) << std::left << s.value("t", 0.0) << "  " << std::setw(11)
       << d.value("trace", 0.0) << "  " << std::setw(8) << d.value("purity", 0.0) << "  "
       << std::setw(11) << d.value("negativity_volume", 0.0) << "  " << std::setw(7)
       << s["regions"].size() << "  ";
    if (s.contains("continuity_residual"))
      os << s.value("continuity_residual", 0.0);
    else
      os << "-";
    os << "\n";
    for (const auto& r : s["regions"]) {
      os << "      region: area=" << r.value("area", 0.0) << " volume=" << r.value("volume", 0.0)
         << " centroid=(" << r["centroid"][0].get<double>() << ", "
         << r["centroid"][1].get<double>() << ") loops=" << r.value("boundary_loops", size_t(0));
      if (r.contains("quantum_term"))
        os << " dV/dt[quantum]=" << r.value("quantum_term", 0.0)
           << " dV/dt[diffusion]=" << r.value("diffusion_term", 0.0);
      os << "\n";
    }
  }
  if (report.contains("strobe")) {
    os << "\nstrobe (period " << report["strobe"].value("period", 0.0) << "):\n";
    for (const auto& f : report["strobe"]["frames"]) {
      os << "  t=" << f.value("t", 0.0);
      if (f.contains("distance_from_previous"))
        os << "  distance=" << f.value("distance_from_previous", 0.0);
      os << "\n";
    }
  }
  return os.str();
}

std::vector<std::pair<std::string, std::string>> list_presets(const std::string& presets_dir) {
  std::vector<std::pair<std::string, std::string>> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(presets_dir, ec)) {
    if (entry.path().extension() != ".json") continue;
    std::string description;
    try {
      const ExperimentConfig cfg = load_config(entry.path().string());
      description = cfg.description;
    } catch (const std::exception& e) {
      description = std::string("(invalid: ") + e.what() + ")";
    }
    out.emplace_back(entry.path().stem().string(), description);
  }
  if (ec) throw IoError("cannot list presets in '" + presets_dir + "'");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wflow
