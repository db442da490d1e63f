#include "wflow/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "wflow/errors.hpp"

namespace wflow {

using nlohmann::json;

namespace {

constexpr char kMagic[8] = {'W', 'F', 'S', 'N', 'A', 'P', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "snapshot container assumes a little-endian host");

void write_field(std::ofstream& out, const Eigen::ArrayXXd& a) {
  // Row-major, x-major: index = ix * np + ip.
  const int nx = int(a.rows()), np = int(a.cols());
  std::vector<double> row(static_cast<size_t>(np), 0.0);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) row[size_t(j)] = a(i, j);
    out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * 8));
  }
}

Eigen::ArrayXXd read_field(std::ifstream& in, int nx, int np) {
  Eigen::ArrayXXd a(nx, np);
  std::vector<double> row(static_cast<size_t>(np), 0.0);
  for (int i = 0; i < nx; ++i) {
    in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * 8));
    if (!in) throw IoError("snapshot: truncated field payload");
    for (int j = 0; j < np; ++j) a(i, j) = row[size_t(j)];
  }
  return a;
}

json params_to_json(const SystemParams& p) {
  return json{{"lambda", p.lambda},
              {"drive_amplitude", p.drive_amplitude},
              {"drive_frequency", p.drive_frequency},
              {"gamma", p.gamma},
              {"nbar", p.nbar}};
}

SystemParams params_from_json(const json& j) {
  SystemParams p;
  p.lambda = j.value("lambda", 0.0);
  p.drive_amplitude = j.value("drive_amplitude", 0.0);
  p.drive_frequency = j.value("drive_frequency", 0.0);
  p.gamma = j.value("gamma", 0.0);
  p.nbar = j.value("nbar", 0.0);
  return p;
}

const VectorField& view_field(const FlowDecomposition& flows, FlowView view) {
  switch (view) {
    case FlowView::total: return flows.j_total;
    case FlowView::sys: return flows.j_sys;
    case FlowView::damp: return flows.j_damp;
    case FlowView::diff: return flows.j_diff;
  }
  return flows.j_total;
}

}  // namespace

void export_snapshot(const SnapshotRecord& record, const std::vector<FlowView>& views,
                     const std::string& path) {
  const PhaseSpaceGrid& g = record.wigner.grid;

  json header;
  header["format"] = "wflow-snapshot";
  header["version"] = 1;
  header["t"] = record.t;
  header["grid"] = json{{"x_min", g.x_min}, {"x_max", g.x_max},   {"p_min", g.p_min},
                        {"p_max", g.p_max}, {"nx", g.nx},         {"np", g.np}};
  header["params"] = params_to_json(record.params);
  header["diagnostics"] = json{{"trace", record.diagnostics.trace},
                               {"purity", record.diagnostics.purity},
                               {"top_level_occupancy", record.diagnostics.top_level_occupancy},
                               {"negativity_volume", record.diagnostics.negativity_volume},
                               {"boundary_max_abs_w", record.diagnostics.boundary_max_abs_w}};
  header["color_max"] = record.wigner.values.abs().maxCoeff();

  json regions = json::array();
  for (size_t r = 0; r < record.regions.size(); ++r) {
    const NegativeRegion& region = record.regions[r];
    json entry{{"area", region.area},
               {"volume", region.volume},
               {"centroid", {region.centroid[0], region.centroid[1]}},
               {"boundary_loops", region.boundary.size()},
               {"cell_count", region.cells.size()}};
    if (r < record.region_rates.size() && record.region_rates[r].valid) {
      entry["quantum_term"] = record.region_rates[r].quantum_term;
      entry["diffusion_term"] = record.region_rates[r].diffusion_term;
    }
    regions.push_back(std::move(entry));
  }
  header["regions"] = std::move(regions);

  json fields = json::array();
  fields.push_back("W");
  for (FlowView v : views) {
    fields.push_back(to_string(v) + "_jx");
    fields.push_back(to_string(v) + "_jp");
  }
  header["fields"] = fields;

  const std::string header_text = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(kMagic, 8);
  const std::uint64_t len = header_text.size();
  out.write(reinterpret_cast<const char*>(&len), 8);
  out.write(header_text.data(), std::streamsize(header_text.size()));

  write_field(out, record.wigner.values);
  for (FlowView v : views) {
    const VectorField& f = view_field(record.flows, v);
    write_field(out, f.jx);
    write_field(out, f.jp);
  }
  if (!out) throw IoError("write failure on '" + path + "'");
}

LoadedSnapshot import_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");

  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw IoError("'" + path + "' is not a wflow snapshot (bad magic)");

  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), 8);
  if (!in || len == 0 || len > (1u << 30)) throw IoError("snapshot: bad header length");
  std::string header_text(len, '\0');
  in.read(header_text.data(), std::streamsize(len));
  if (!in) throw IoError("snapshot: truncated header");

  json header;
  try {
    header = json::parse(header_text);
  } catch (const json::exception& e) {
    throw IoError(std::string("snapshot: header parse error: ") + e.what());
  }

  const json& g = header.at("grid");
  const PhaseSpaceGrid grid(g.at("x_min").get<double>(), g.at("x_max").get<double>(),
                            g.at("p_min").get<double>(), g.at("p_max").get<double>(),
                            g.at("nx").get<int>(), g.at("np").get<int>());

  LoadedSnapshot snap{header.at("t").get<double>(),
                      grid,
                      params_from_json(header.at("params")),
                      ScalarField(grid),
                      {},
                      header_text,
                      header.value("color_max", 0.0)};

  const auto fields = header.at("fields").get<std::vector<std::string>>();
  if (fields.empty() || fields.front() != "W") throw IoError("snapshot: first field must be W");
  snap.w.values = read_field(in, grid.nx, grid.np);

  for (size_t k = 1; k < fields.size(); k += 2) {
    const std::string& fx = fields[k];
    if (k + 1 >= fields.size()) throw IoError("snapshot: dangling flow component " + fx);
    const std::string& fp = fields[k + 1];
    const auto us = fx.find("_jx");
    if (us == std::string::npos || fp != fx.substr(0, us) + "_jp")
      throw IoError("snapshot: unexpected field pair " + fx + ", " + fp);
    VectorField f(grid);
    f.jx = read_field(in, grid.nx, grid.np);
    f.jp = read_field(in, grid.nx, grid.np);
    snap.flows.emplace_back(flow_view_from_string(fx.substr(0, us)), std::move(f));
  }
  return snap;
}

}  // namespace wflow
