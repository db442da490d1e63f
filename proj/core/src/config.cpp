#include "wflow/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wflow/errors.hpp"

namespace wflow {

using nlohmann::json;

std::string to_string(SystemKind kind) {
  return kind == SystemKind::harmonic ? "harmonic" : "duffing";
}

std::string to_string(FlowView view) {
  switch (view) {
    case FlowView::total: return "total";
    case FlowView::sys: return "sys";
    case FlowView::damp: return "damp";
    case FlowView::diff: return "diff";
  }
  return "total";
}

SystemKind system_kind_from_string(const std::string& s) {
  if (s == "harmonic") return SystemKind::harmonic;
  if (s == "duffing") return SystemKind::duffing;
  throw ConfigError("unknown system kind '" + s + "' (expected harmonic or duffing)");
}

FlowView flow_view_from_string(const std::string& s) {
  if (s == "total") return FlowView::total;
  if (s == "sys") return FlowView::sys;
  if (s == "damp") return FlowView::damp;
  if (s == "diff") return FlowView::diff;
  throw ConfigError("unknown flow view '" + s + "' (expected total, sys, damp or diff)");
}

void ExperimentConfig::validate() const {
  try {
    params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid params: ") + e.what());
  }
  if (system == SystemKind::harmonic && (params.lambda != 0.0 || params.drive_amplitude != 0.0))
    throw ConfigError("harmonic system requires lambda = 0 and drive_amplitude = 0");
  if (truncation < 2) throw ConfigError("truncation must be >= 2");
  if (dt <= 0.0) throw ConfigError("dt must be > 0");
  if (t_final < 0.0) throw ConfigError("t_final must be >= 0");
  for (double t : snapshot_times)
    if (t < 0.0 || t > t_final * (1.0 + 1e-12) + 1e-12)
      throw ConfigError("snapshot time " + std::to_string(t) + " outside [0, t_final]");
  if (snapshot_times.empty()) throw ConfigError("snapshot_times must not be empty");
  if (render_figures && flow_views.empty())
    throw ConfigError("flow_views must not be empty when figures are requested");
  if (strobe.period < 0.0) throw ConfigError("strobe.period must be >= 0");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

DensityMatrix ExperimentConfig::make_initial_state() const {
  const FockSpace space(truncation);
  switch (initial_state.kind) {
    case InitialStateSpec::Kind::fock: return fock_state(space, initial_state.n);
    case InitialStateSpec::Kind::coherent: return coherent_state(space, initial_state.alpha);
    case InitialStateSpec::Kind::cat: return cat_state(space, initial_state.separation);
  }
  throw ConfigError("unknown initial state kind");
}

namespace {

double time_scale(const std::string& unit, const SystemParams& params) {
  if (unit == "absolute") return 1.0;
  if (unit == "tau") return kFreePeriod;
  if (unit == "tau_d") {
    if (params.drive_frequency <= 0.0)
      throw ConfigError("time_unit tau_d requires drive_frequency > 0");
    return 2.0 * M_PI / params.drive_frequency;
  }
  throw ConfigError("unknown time_unit '" + unit + "' (expected absolute, tau or tau_d)");
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": JSON parse error: " + e.what());
  }

  try {
    ExperimentConfig cfg;
    cfg.name = root.value("name", "");
    cfg.description = root.value("description", "");
    cfg.system = system_kind_from_string(root.at("system").get<std::string>());

    const json& init = root.at("initial_state");
    const std::string kind = init.at("type").get<std::string>();
    if (kind == "fock") {
      cfg.initial_state.kind = InitialStateSpec::Kind::fock;
      cfg.initial_state.n = init.at("n").get<int>();
    } else if (kind == "coherent") {
      cfg.initial_state.kind = InitialStateSpec::Kind::coherent;
      cfg.initial_state.alpha =
          Complex(init.value("alpha_re", 0.0), init.value("alpha_im", 0.0));
    } else if (kind == "cat") {
      cfg.initial_state.kind = InitialStateSpec::Kind::cat;
      cfg.initial_state.separation = init.at("separation").get<double>();
    } else {
      throw ConfigError("unknown initial state type '" + kind + "'");
    }

    if (root.contains("params")) {
      const json& p = root["params"];
      cfg.params.lambda = p.value("lambda", 0.0);
      cfg.params.drive_amplitude = p.value("drive_amplitude", 0.0);
      cfg.params.drive_frequency = p.value("drive_frequency", 0.0);
      cfg.params.gamma = p.value("gamma", 0.0);
      cfg.params.nbar = p.value("nbar", 0.0);
    }

    cfg.truncation = root.value("truncation", 40);

    if (root.contains("grid")) {
      const json& g = root["grid"];
      cfg.grid = PhaseSpaceGrid(g.value("x_min", -6.0), g.value("x_max", 6.0),
                                g.value("p_min", -6.0), g.value("p_max", 6.0),
                                g.value("nx", 256), g.value("np", 256));
    }

    const double scale = time_scale(root.value("time_unit", "absolute"), cfg.params);
    cfg.dt = root.at("dt").get<double>() * scale;
    cfg.t_final = root.at("t_final").get<double>() * scale;
    for (double t : root.at("snapshot_times").get<std::vector<double>>())
      cfg.snapshot_times.push_back(t * scale);

    if (root.contains("flow_views")) {
      cfg.flow_views.clear();
      for (const auto& v : root["flow_views"])
        cfg.flow_views.push_back(flow_view_from_string(v.get<std::string>()));
    }

    cfg.output_dir = root.value("output_dir", "runs/" + (cfg.name.empty() ? "out" : cfg.name));
    cfg.render_figures = root.value("render_figures", false);
    cfg.color_max = root.value("color_max", 0.0);
    if (root.contains("strobe")) {
      cfg.strobe.period = root["strobe"].value("period", 0.0) * scale;
      cfg.strobe.window_start = root["strobe"].value("window_start", 0.0) * scale;
    }

    cfg.validate();
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace wflow
