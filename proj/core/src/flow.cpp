#include "wflow/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace wflow {

namespace {

Eigen::ArrayXd x_column(const PhaseSpaceGrid& g) {
  Eigen::ArrayXd x(g.nx);
  for (int i = 0; i < g.nx; ++i) x(i) = g.x(i);
  return x;
}

Eigen::ArrayXd p_row(const PhaseSpaceGrid& g) {
  Eigen::ArrayXd p(g.np);
  for (int j = 0; j < g.np; ++j) p(j) = g.p(j);
  return p;
}

}  // namespace

VectorField flow_harmonic(const ScalarField& w) {
  VectorField j(w.grid);
  const Eigen::ArrayXd x = x_column(w.grid);
  const Eigen::ArrayXd p = p_row(w.grid);
  j.jx = w.values.rowwise() * p.transpose();
  j.jp = w.values.colwise() * (-x);
  return j;
}

VectorField flow_duffing(const ScalarField& w, const SystemParams& params, double t) {
  VectorField j(w.grid);
  const Eigen::ArrayXd x = x_column(w.grid);
  const Eigen::ArrayXd p = p_row(w.grid);

  j.jx = w.values.rowwise() * p.transpose();

  const double drive =
      params.drive_amplitude == 0.0
          ? 0.0
          : params.drive_amplitude * std::cos(params.drive_frequency * t);
  const Eigen::ArrayXd force = -x + drive - params.lambda * x.cube();
  j.jp = w.values.colwise() * force;
  if (params.lambda != 0.0) {
    const ScalarField wpp = partial_pp(w);
    j.jp += wpp.values.colwise() * (0.25 * params.lambda * x);
  }
  return j;
}

VectorField flow_damp(const ScalarField& w, const SystemParams& params) {
  VectorField j(w.grid);
  const double c = -0.5 * params.gamma;
  j.jx = (w.values.colwise() * x_column(w.grid)) * c;
  j.jp = (w.values.rowwise() * p_row(w.grid).transpose()) * c;
  return j;
}

VectorField flow_diff(const ScalarField& w, const SystemParams& params) {
  const double c = -0.5 * params.gamma * (params.nbar + 0.5);
  VectorField j(w.grid);
  j.jx = partial_x(w).values * c;
  j.jp = partial_p(w).values * c;
  return j;
}

FlowDecomposition decompose_flow(const ScalarField& w, const SystemParams& params, double t) {
  FlowDecomposition d{flow_duffing(w, params, t), flow_damp(w, params), flow_diff(w, params),
                      VectorField(w.grid), t, params};
  d.j_total.jx = d.j_sys.jx + d.j_damp.jx + d.j_diff.jx;
  d.j_total.jp = d.j_sys.jp + d.j_damp.jp + d.j_diff.jp;
  return d;
}

ScalarField divergence(const VectorField& j) {
  ScalarField out(j.grid);
  out.values = partial_x(ScalarField(j.grid, j.jx)).values +
               partial_p(ScalarField(j.grid, j.jp)).values;
  return out;
}

ContinuityResidual continuity_residual_fields(const ScalarField& w_prev, const ScalarField& w_next,
                                              double delta, const VectorField& j_total) {
  if (delta <= 0.0) throw std::invalid_argument("continuity_residual: delta must be > 0");
  const ScalarField div = divergence(j_total);
  const int nx = div.grid.nx, np = div.grid.np;
  if (nx < 6 || np < 6) throw std::invalid_argument("continuity_residual: grid too small");

  const auto interior = [&](const Eigen::ArrayXXd& a) {
    return a.block(2, 2, nx - 4, np - 4);
  };
  const Eigen::ArrayXXd dwdt = (w_next.values - w_prev.values) / (2.0 * delta);
  const Eigen::ArrayXXd res = interior(dwdt) + interior(div.values);
  const Eigen::ArrayXXd ref = interior(div.values);

  ContinuityResidual r;
  const double n_pts = double(res.size());
  r.absolute = std::sqrt(res.square().sum() / n_pts);
  r.normalizer = std::sqrt(ref.square().sum() / n_pts);
  r.relative = r.normalizer > 0.0 ? r.absolute / r.normalizer : 0.0;
  const Eigen::ArrayXXd w_mid = 0.5 * (interior(w_prev.values) + interior(w_next.values));
  r.field_scale = std::sqrt(w_mid.square().sum() / n_pts);
  return r;
}

ContinuityResidual continuity_residual(const Trajectory& traj, const PhaseSpaceGrid& grid,
                                       int index, int stride) {
  if (stride < 1) throw std::invalid_argument("continuity_residual: stride must be >= 1");
  const int n = int(traj.times.size());
  if (index - stride < 0 || index + stride >= n)
    throw std::invalid_argument("continuity_residual: missing neighbor snapshots");
  const double d_prev = traj.times[size_t(index)] - traj.times[size_t(index - stride)];
  const double d_next = traj.times[size_t(index + stride)] - traj.times[size_t(index)];
  if (std::abs(d_prev - d_next) > 1e-9 * std::max(d_prev, d_next))
    throw std::invalid_argument("continuity_residual: neighbor snapshots not equally spaced");

  const ScalarField w_prev = wigner_transform(traj.states[size_t(index - stride)], grid);
  const ScalarField w_mid = wigner_transform(traj.states[size_t(index)], grid);
  const ScalarField w_next = wigner_transform(traj.states[size_t(index + stride)], grid);
  const FlowDecomposition flows =
      decompose_flow(w_mid, traj.params, traj.times[size_t(index)]);
  return continuity_residual_fields(w_prev, w_next, d_next, flows.j_total);
}

}  // namespace wflow
