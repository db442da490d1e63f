// wflow: open quantum system Wigner function and flow simulator.
//
// Subcommands:
//   run <config>        execute an experiment config (or preset name)
//   render <snapshot>   draw a Wigner + flow figure from a snapshot file
//   report <run-dir>    print the run report
//   presets list        list shipped experiment presets
//
// Exit codes: 0 success, 2 config error, 3 truncation failure, 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wflow/config.hpp"
#include "wflow/errors.hpp"
#include "wflow/experiment.hpp"
#include "wflow/render.hpp"
#include "wflow/snapshot.hpp"

namespace fs = std::filesystem;

namespace {

std::string presets_dir() {
  if (const char* env = std::getenv("WFLOW_PRESETS_DIR")) return env;
  if (fs::exists("presets") && fs::is_directory("presets")) return "presets";
#ifdef WFLOW_SOURCE_PRESETS_DIR
  return WFLOW_SOURCE_PRESETS_DIR;
#else
  return "presets";
#endif
}

std::string resolve_config_path(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  const fs::path candidate = fs::path(presets_dir()) / (arg + ".json");
  if (fs::exists(candidate)) return candidate.string();
  throw wflow::ConfigError("no config file or preset named '" + arg + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner function and flow simulator for open bosonic quantum systems"};
  app.require_subcommand(1);

  std::string run_config;
  auto* cmd_run = app.add_subcommand("run", "Execute an experiment config");
  cmd_run->add_option("config", run_config, "Config file path or preset name")->required();

  std::string render_snapshot, render_view = "total", render_out;
  double render_color_max = 0.0;
  auto* cmd_render = app.add_subcommand("render", "Render a figure from a snapshot file");
  cmd_render->add_option("snapshot", render_snapshot, "Snapshot (.wfs) path")->required();
  cmd_render->add_option("--view", render_view, "Flow view: total, sys, damp or diff");
  cmd_render->add_option("--out", render_out, "Output PNG path")->required();
  cmd_render->add_option("--color-max", render_color_max,
                         "Fix the color normalization instead of per-snapshot max |W|");

  std::string report_dir;
  auto* cmd_report = app.add_subcommand("report", "Print the report of a finished run");
  cmd_report->add_option("run-dir", report_dir, "Run output directory")->required();

  auto* cmd_presets = app.add_subcommand("presets", "Preset utilities");
  auto* cmd_presets_list = cmd_presets->add_subcommand("list", "List shipped presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_run) {
      const auto config = wflow::load_config(resolve_config_path(run_config));
      const auto result = wflow::run(config);
      std::cout << "run complete: " << result.snapshots.size() << " snapshots in "
                << result.output_dir << "\n";
      for (const auto& frame : result.strobe_frames)
        if (frame.distance_from_previous >= 0.0)
          std::cout << "strobe t=" << frame.t << " distance=" << frame.distance_from_previous
                    << "\n";
      return 0;
    }
    if (*cmd_render) {
      const auto snapshot = wflow::import_snapshot(render_snapshot);
      wflow::RenderOptions opts;
      opts.color_max = render_color_max;
      wflow::render_figure(snapshot, wflow::flow_view_from_string(render_view), render_out, opts);
      std::cout << "wrote " << render_out << "\n";
      return 0;
    }
    if (*cmd_report) {
      std::cout << wflow::report_text(report_dir);
      return 0;
    }
    if (*cmd_presets) {
      if (!*cmd_presets_list) {
        std::cerr << "usage: wflow presets list\n";
        return 2;
      }
      for (const auto& [name, description] : wflow::list_presets(presets_dir()))
        std::cout << name << "  " << description << "\n";
      return 0;
    }
  } catch (const wflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wflow::TruncationError& e) {
    std::cerr << "truncation failure: " << e.what() << "\n";
    return 3;
  } catch (const wflow::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
