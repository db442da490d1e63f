#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "wflow/snapshot.hpp"

namespace wflow {

struct RenderOptions {
  int plot_pixels = 512;   // heatmap square size; margins are added around it
  int quiver_max = 24;     // quiver arrows per axis, at most
  double color_max = 0.0;  // 0: symmetric normalization at this snapshot's max|W|
  std::string title;
};

/// Diverging colormap: blue for W > 0, red for W < 0, white at zero,
/// density proportional to |W| up to color_max.
std::array<std::uint8_t, 3> wigner_color(double value, double color_max);

/// Renders the Wigner density with a quiver of the given flow, axes in
/// dimensionless (x, p), a unit-area square glyph at bottom right and an
/// arrow-scale legend at top left. Writes a PNG.
void render_figure(const ScalarField& w, const VectorField& flow, const std::string& path,
                   const RenderOptions& options = {});

void render_figure(const SnapshotRecord& record, FlowView view, const std::string& path,
                   RenderOptions options = {});

void render_figure(const LoadedSnapshot& snapshot, FlowView view, const std::string& path,
                   RenderOptions options = {});

}  // namespace wflow
