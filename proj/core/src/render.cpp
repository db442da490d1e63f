#include "wflow/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "image.hpp"
#include "wflow/errors.hpp"

namespace wflow {

namespace {

using detail::Color;
using detail::Image;

constexpr Color kBlue{28, 82, 192};
constexpr Color kRed{198, 34, 34};
constexpr Color kBlack{0, 0, 0};
constexpr Color kGray{90, 90, 90};

std::string format_number(double v, int decimals = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << v;
  std::string s = os.str();
  // trim trailing zeros but keep at least one decimal
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

double round_down_125(double v) {
  if (v <= 0.0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {5.0, 2.0, 1.0})
    if (m * mag <= v) return m * mag;
  return 0.5 * mag;
}

}  // namespace

std::array<std::uint8_t, 3> wigner_color(double value, double color_max) {
  const double cmax = color_max > 0.0 ? color_max : 1.0;
  const double s = std::clamp(std::abs(value) / cmax, 0.0, 1.0);
  const Color base = value >= 0.0 ? kBlue : kRed;
  std::array<std::uint8_t, 3> out;
  for (int c = 0; c < 3; ++c)
    out[size_t(c)] = std::uint8_t(std::lround(255.0 + s * (double(base[size_t(c)]) - 255.0)));
  return out;
}

void render_figure(const ScalarField& w, const VectorField& flow, const std::string& path,
                   const RenderOptions& options) {
  if (!(w.grid == flow.grid))
    throw std::invalid_argument("render_figure: field and flow grids differ");
  const PhaseSpaceGrid& g = w.grid;

  const int plot = options.plot_pixels;
  const int ml = 46, mb = 34, mt = 26, mr = 16;
  Image img(ml + plot + mr, mt + plot + mb);

  const double cmax = options.color_max > 0.0 ? options.color_max : w.values.abs().maxCoeff();

  auto to_px = [&](double x) { return ml + (x - g.x_min) / (g.x_max - g.x_min) * plot; };
  auto to_py = [&](double p) { return mt + (g.p_max - p) / (g.p_max - g.p_min) * plot; };

  // Heatmap: nearest-neighbour sampling of the grid.
  for (int py = 0; py < plot; ++py) {
    const double p = g.p_max - (py + 0.5) / plot * (g.p_max - g.p_min);
    const int j = std::clamp(int(std::lround((p - g.p_min) / g.dp())), 0, g.np - 1);
    for (int px = 0; px < plot; ++px) {
      const double x = g.x_min + (px + 0.5) / plot * (g.x_max - g.x_min);
      const int i = std::clamp(int(std::lround((x - g.x_min) / g.dx())), 0, g.nx - 1);
      img.set(ml + px, mt + py, wigner_color(w.values(i, j), cmax));
    }
  }

  // Frame and ticks at integer coordinates.
  img.line(ml, mt, ml + plot, mt, kBlack);
  img.line(ml, mt + plot, ml + plot, mt + plot, kBlack);
  img.line(ml, mt, ml, mt + plot, kBlack);
  img.line(ml + plot, mt, ml + plot, mt + plot, kBlack);
  const int tick_step = std::max(1, int(std::ceil((g.x_max - g.x_min) / 7.0)));
  for (int v = int(std::ceil(g.x_min)); v <= int(std::floor(g.x_max)); v += tick_step) {
    const int px = int(std::lround(to_px(v)));
    img.line(px, mt + plot, px, mt + plot + 4, kBlack);
    const std::string label = std::to_string(v);
    img.text(px - Image::text_width(label) / 2, mt + plot + 7, label, kBlack);
  }
  for (int v = int(std::ceil(g.p_min)); v <= int(std::floor(g.p_max)); v += tick_step) {
    const int py = int(std::lround(to_py(v)));
    img.line(ml - 4, py, ml, py, kBlack);
    const std::string label = std::to_string(v);
    img.text(ml - 7 - Image::text_width(label), py - 3, label, kBlack);
  }
  img.text(ml + plot / 2 - 3, mt + plot + 20, "x", kBlack);
  img.text(ml - 30, mt + plot / 2 - 4, "p", kBlack);

  // Quiver, subsampled to at most quiver_max positions per axis.
  const int stride = std::max(1, (std::max(g.nx, g.np) + options.quiver_max - 1) / options.quiver_max);
  double j_max = 0.0;
  for (int i = stride / 2; i < g.nx; i += stride)
    for (int j = stride / 2; j < g.np; j += stride)
      j_max = std::max(j_max, std::hypot(flow.jx(i, j), flow.jp(i, j)));
  if (j_max > 0.0) {
    const double cell_px = double(plot) / std::max(g.nx, g.np) * stride;
    const double scale = 0.9 * cell_px / j_max;
    for (int i = stride / 2; i < g.nx; i += stride) {
      for (int j = stride / 2; j < g.np; j += stride) {
        const double jx = flow.jx(i, j), jp = flow.jp(i, j);
        if (std::hypot(jx, jp) < 0.02 * j_max) continue;
        const double x0 = to_px(g.x(i)), y0 = to_py(g.p(j));
        img.arrow(x0, y0, x0 + scale * jx, y0 - scale * jp, kBlack);
      }
    }
    // Arrow-scale legend, top left.
    const double j_ref = round_down_125(j_max);
    const double len = scale * j_ref;
    img.arrow(ml + 8, mt + 12, ml + 8 + len, mt + 12, kBlack);
    img.text(ml + 8, mt + 18, "J=" + format_number(j_ref, 4), kBlack);
  }

  // Unit-area (hbar) square glyph, bottom right.
  {
    const double side_px = to_px(g.x_min + 1.0) - to_px(g.x_min);
    const int x1 = ml + plot - 8, y1 = mt + plot - 8;
    const int x0 = x1 - int(std::lround(side_px)), y0 = y1 - int(std::lround(side_px));
    img.line(x0, y0, x1, y0, kGray);
    img.line(x0, y1, x1, y1, kGray);
    img.line(x0, y0, x0, y1, kGray);
    img.line(x1, y0, x1, y1, kGray);
  }

  if (!options.title.empty())
    img.text(ml + plot - Image::text_width(options.title), mt - 12, options.title, kBlack);

  detail::write_png(img, path);
}

namespace {

const VectorField& pick_view(const FlowDecomposition& flows, FlowView view) {
  switch (view) {
    case FlowView::total: return flows.j_total;
    case FlowView::sys: return flows.j_sys;
    case FlowView::damp: return flows.j_damp;
    case FlowView::diff: return flows.j_diff;
  }
  return flows.j_total;
}

}  // namespace

void render_figure(const SnapshotRecord& record, FlowView view, const std::string& path,
                   RenderOptions options) {
  if (options.title.empty())
    options.title = "t=" + format_number(record.t) + " " + to_string(view);
  render_figure(record.wigner, pick_view(record.flows, view), path, options);
}

void render_figure(const LoadedSnapshot& snapshot, FlowView view, const std::string& path,
                   RenderOptions options) {
  for (const auto& [v, field] : snapshot.flows) {
    if (v == view) {
      if (options.title.empty())
        options.title = "t=" + format_number(snapshot.t) + " " + to_string(view);
      render_figure(snapshot.w, field, path, options);
      return;
    }
  }
  throw ConfigError("snapshot does not contain the '" + to_string(view) + "' flow view");
}

}  // namespace wflow
