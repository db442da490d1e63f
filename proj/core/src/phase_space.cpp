#include "wflow/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wflow {

PhaseSpaceGrid::PhaseSpaceGrid(double x_min_, double x_max_, double p_min_, double p_max_, int nx_,
                               int np_)
    : x_min(x_min_), x_max(x_max_), p_min(p_min_), p_max(p_max_), nx(nx_), np(np_) {
  if (!(x_max > x_min) || !(p_max > p_min))
    throw std::invalid_argument("PhaseSpaceGrid: empty extent");
  if (nx < 16 || np < 16)
    throw std::invalid_argument("PhaseSpaceGrid: nx and np must be >= 16");
}

ScalarField::ScalarField(const PhaseSpaceGrid& g, Eigen::ArrayXXd v) : grid(g), values(std::move(v)) {
  if (values.rows() != grid.nx || values.cols() != grid.np)
    throw std::invalid_argument("ScalarField: values shape does not match grid");
}

double ScalarField::interpolate(double x, double p) const {
  const double fx = (x - grid.x_min) / grid.dx();
  const double fp = (p - grid.p_min) / grid.dp();
  int i = int(std::floor(fx));
  int j = int(std::floor(fp));
  i = std::max(0, std::min(grid.nx - 2, i));
  j = std::max(0, std::min(grid.np - 2, j));
  const double tx = fx - i;
  const double tp = fp - j;
  return (1 - tx) * (1 - tp) * values(i, j) + tx * (1 - tp) * values(i + 1, j) +
         (1 - tx) * tp * values(i, j + 1) + tx * tp * values(i + 1, j + 1);
}

VectorField::VectorField(const PhaseSpaceGrid& g, Eigen::ArrayXXd jx_, Eigen::ArrayXXd jp_)
    : grid(g), jx(std::move(jx_)), jp(std::move(jp_)) {
  if (jx.rows() != grid.nx || jx.cols() != grid.np || jp.rows() != grid.nx || jp.cols() != grid.np)
    throw std::invalid_argument("VectorField: component shape does not match grid");
}

}  // namespace wflow
