#pragma once

#include <Eigen/Dense>

namespace wflow {

/// Rectangular (x, p) lattice. Index convention throughout: row i is the
/// position index, column j is the momentum index.
struct PhaseSpaceGrid {
  double x_min, x_max, p_min, p_max;
  int nx, np;

  PhaseSpaceGrid(double x_min_, double x_max_, double p_min_, double p_max_, int nx_, int np_);

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int i) const { return x_min + i * dx(); }
  double p(int j) const { return p_min + j * dp(); }

  friend bool operator==(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    return a.x_min == b.x_min && a.x_max == b.x_max && a.p_min == b.p_min && a.p_max == b.p_max &&
           a.nx == b.nx && a.np == b.np;
  }
};

/// Real scalar field sampled on a grid (nx rows, np columns).
struct ScalarField {
  PhaseSpaceGrid grid;
  Eigen::ArrayXXd values;

  ScalarField(const PhaseSpaceGrid& g) : grid(g), values(Eigen::ArrayXXd::Zero(g.nx, g.np)) {}
  ScalarField(const PhaseSpaceGrid& g, Eigen::ArrayXXd v);

  /// Bilinear interpolation at an arbitrary in-domain point.
  double interpolate(double x, double p) const;
};

/// Real vector field (jx, jp) sampled on a grid.
struct VectorField {
  PhaseSpaceGrid grid;
  Eigen::ArrayXXd jx, jp;

  VectorField(const PhaseSpaceGrid& g)
      : grid(g), jx(Eigen::ArrayXXd::Zero(g.nx, g.np)), jp(Eigen::ArrayXXd::Zero(g.nx, g.np)) {}
  VectorField(const PhaseSpaceGrid& g, Eigen::ArrayXXd jx_, Eigen::ArrayXXd jp_);
};

}  // namespace wflow
