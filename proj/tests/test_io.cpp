#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <wflow/config.hpp>
#include <wflow/errors.hpp>
#include <wflow/experiment.hpp>
#include <wflow/negativity.hpp>
#include <wflow/render.hpp>
#include <wflow/snapshot.hpp>

using namespace wflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("wflow_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string minimal_config_json(const std::string& output_dir) {
  return R"({
    "name": "mini",
    "description": "tiny vacuum run",
    "system": "harmonic",
    "initial_state": {"type": "fock", "n": 1},
    "params": {"gamma": 0.01},
    "truncation": 12,
    "grid": {"x_min": -5, "x_max": 5, "p_min": -5, "p_max": 5, "nx": 64, "np": 64},
    "dt": 0.05,
    "t_final": 1.0,
    "snapshot_times": [0.0, 0.5, 1.0],
    "flow_views": ["total", "diff"],
    "render_figures": true,
    "output_dir": ")" + output_dir + R"("
  })";
}

SnapshotRecord small_record() {
  const FockSpace space(10);
  SystemParams params;
  params.gamma = 0.01;
  const PhaseSpaceGrid grid(-5.0, 5.0, -5.0, 5.0, 48, 48);
  return build_snapshot_record(fock_state(space, 2), 0.0, params, grid);
}

}  // namespace

TEST_CASE("config: parse, validate, and unit conversion") {
  TempDir tmp;
  const auto cfg = parse_config(minimal_config_json((tmp.path / "out").string()), "<test>");
  CHECK(cfg.name == "mini");
  CHECK(cfg.truncation == 12);
  CHECK(cfg.snapshot_times.size() == 3);
  CHECK(cfg.flow_views.size() == 2);

  const std::string tau_json = R"({
    "name": "tau-units", "system": "harmonic",
    "initial_state": {"type": "fock", "n": 0},
    "params": {"gamma": 0.01},
    "time_unit": "tau",
    "dt": 0.002, "t_final": 2.0, "snapshot_times": [0.0, 1.0, 2.0]
  })";
  const auto tau_cfg = parse_config(tau_json, "<test>");
  CHECK(tau_cfg.t_final == doctest::Approx(2.0 * kFreePeriod));
  CHECK(tau_cfg.snapshot_times[1] == doctest::Approx(kFreePeriod));

  CHECK_THROWS_AS(parse_config("{not json", "<test>"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": "harmonic"})", "<test>"), ConfigError);
  // Harmonic system with a quartic term is inconsistent.
  CHECK_THROWS_AS(parse_config(R"({
    "name": "bad", "system": "harmonic",
    "initial_state": {"type": "fock", "n": 0},
    "params": {"lambda": 0.05},
    "dt": 0.01, "t_final": 1.0, "snapshot_times": [0.0]
  })", "<test>"), ConfigError);
}

TEST_CASE("snapshot container: bit-exact round trip") {
  TempDir tmp;
  const auto rec = small_record();
  const std::string path = (tmp.path / "snap.wfs").string();
  export_snapshot(rec, {FlowView::total, FlowView::diff}, path);

  const auto loaded = import_snapshot(path);
  CHECK(loaded.t == rec.t);
  CHECK(loaded.grid == rec.wigner.grid);
  CHECK((loaded.w.values == rec.wigner.values).all());
  REQUIRE(loaded.flows.size() == 2);
  CHECK(loaded.flows[0].first == FlowView::total);
  CHECK((loaded.flows[0].second.jx == rec.flows.j_total.jx).all());
  CHECK((loaded.flows[0].second.jp == rec.flows.j_total.jp).all());
  CHECK(loaded.flows[1].first == FlowView::diff);
  CHECK((loaded.flows[1].second.jx == rec.flows.j_diff.jx).all());

  // Header diagnostics equal recomputation from the payload.
  CHECK(std::abs(negativity_volume(loaded.w) - rec.diagnostics.negativity_volume) < 1e-12);
}

TEST_CASE("snapshot container: payload size arithmetic") {
  TempDir tmp;
  const auto rec = small_record();
  const std::string path = (tmp.path / "snap.wfs").string();
  export_snapshot(rec, {FlowView::total}, path);

  std::ifstream in(path, std::ios::binary);
  char magic[8];
  in.read(magic, 8);
  std::uint64_t header_len = 0;
  in.read(reinterpret_cast<char*>(&header_len), 8);
  in.seekg(0, std::ios::end);
  const auto total = in.tellg();
  // 3 fields (W, total_jx, total_jp) of nx*np doubles.
  const std::uint64_t expected_payload = 3ull * 48 * 48 * 8;
  CHECK(std::uint64_t(total) == 16 + header_len + expected_payload);

  CHECK_THROWS_AS(import_snapshot((tmp.path / "missing.wfs").string()), IoError);
}

TEST_CASE("render: sign structure of the N=2 figure") {
  TempDir tmp;
  const auto rec = small_record();
  const std::string path = (tmp.path / "fig.png").string();
  render_figure(rec, FlowView::total, path);

  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  unsigned char sig[8];
  in.read(reinterpret_cast<char*>(sig), 8);
  CHECK(sig[0] == 0x89);
  CHECK(sig[1] == 'P');

  // Colormap contract: blue at positive W, red at negative, white at zero.
  const auto blue = wigner_color(0.3, 0.3);
  CHECK(blue[2] > blue[0]);
  const auto red = wigner_color(-0.3, 0.3);
  CHECK(red[0] > red[2]);
  const auto white = wigner_color(0.0, 0.3);
  CHECK(white[0] == 255);
  CHECK(white[1] == 255);
  CHECK(white[2] == 255);
}

TEST_CASE("run: pipeline outputs, determinism, report") {
  TempDir tmp;
  const auto cfg = parse_config(minimal_config_json((tmp.path / "out").string()), "<test>");
  const auto result = run(cfg);
  REQUIRE(result.snapshots.size() == 3);
  CHECK(fs::exists(result.report_file));
  for (const auto& f : result.snapshot_files) CHECK(fs::exists(f));
  CHECK(result.figure_files.size() == 6);  // 3 snapshots x 2 views
  for (const auto& f : result.figure_files) CHECK(fs::exists(f));

  // Diagnostics present and sane.
  for (const auto& s : result.snapshots) {
    CHECK(std::abs(s.diagnostics.trace - 1.0) < 1e-6);
    CHECK(s.diagnostics.purity <= 1.0 + 1e-9);
  }
  // Middle snapshot has equally spaced neighbors: residual defined.
  CHECK(std::isfinite(result.continuity_residuals[1]));

  // Determinism: snapshot payload is bit-identical across runs.
  const auto cfg2 = [&] {
    auto c = cfg;
    c.output_dir = (tmp.path / "out2").string();
    return c;
  }();
  const auto result2 = run(cfg2);
  for (size_t i = 0; i < result.snapshot_files.size(); ++i) {
    std::ifstream a(result.snapshot_files[i], std::ios::binary);
    std::ifstream b(result2.snapshot_files[i], std::ios::binary);
    const std::string da((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string db((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(da == db);
  }

  const std::string text = report_text(result.output_dir);
  CHECK(text.find("mini") != std::string::npos);
  CHECK(text.find("regions") != std::string::npos);
}

TEST_CASE("run: strobe frames and report distances") {
  TempDir tmp;
  auto cfg = parse_config(minimal_config_json((tmp.path / "out").string()), "<test>");
  cfg.render_figures = false;
  cfg.strobe.period = 0.5;
  cfg.strobe.window_start = 0.0;
  const auto result = run(cfg);
  REQUIRE(result.strobe_frames.size() == 3);  // t = 0, 0.5, 1.0
  CHECK(result.strobe_frames[0].distance_from_previous < 0.0);
  CHECK(result.strobe_frames[1].distance_from_previous >= 0.0);

  SUBCASE("single-frame strobe has no distance entries") {
    auto single = cfg;
    single.output_dir = (tmp.path / "out3").string();
    single.strobe.window_start = 0.9;
    const auto r = run(single);
    REQUIRE(r.strobe_frames.size() == 1);
    CHECK(r.strobe_frames[0].distance_from_previous < 0.0);
  }
}

TEST_CASE("run: env var overrides the output directory") {
  TempDir tmp;
  auto cfg = parse_config(minimal_config_json((tmp.path / "ignored").string()), "<test>");
  cfg.render_figures = false;
  const std::string override_dir = (tmp.path / "env_override").string();
  setenv("WFLOW_OUTPUT_DIR", override_dir.c_str(), 1);
  const auto result = run(cfg);
  unsetenv("WFLOW_OUTPUT_DIR");
  CHECK(result.output_dir == override_dir);
  CHECK(fs::exists(fs::path(override_dir) / "report.json"));
}

TEST_CASE("import rejects non-snapshot files") {
  TempDir tmp;
  const std::string path = (tmp.path / "junk.wfs").string();
  std::ofstream(path) << "definitely not a snapshot";
  CHECK_THROWS_AS(import_snapshot(path), IoError);
}
