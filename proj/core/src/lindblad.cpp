#include "wflow/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wflow/errors.hpp"

namespace wflow {

void SystemParams::validate() const {
  if (gamma < 0.0) throw std::invalid_argument("SystemParams: gamma must be >= 0");
  if (nbar < 0.0) throw std::invalid_argument("SystemParams: nbar must be >= 0");
  if (drive_amplitude != 0.0 && drive_frequency <= 0.0)
    throw std::invalid_argument("SystemParams: drive_frequency must be > 0 when drive_amplitude != 0");
}

double SystemParams::drive_period() const {
  if (drive_frequency <= 0.0)
    throw std::invalid_argument("SystemParams: drive_period undefined for drive_frequency <= 0");
  return 2.0 * M_PI / drive_frequency;
}

OperatorMatrix hamiltonian(const FockSpace& space, const SystemParams& params, double t) {
  const ComplexMatrix x = position(space).entries();
  const ComplexMatrix p = momentum(space).entries();
  const ComplexMatrix x2 = x * x;
  ComplexMatrix h = 0.5 * (x2 + p * p);
  if (params.lambda != 0.0) h += (params.lambda / 4.0) * (x2 * x2);
  if (params.drive_amplitude != 0.0)
    h -= params.drive_amplitude * std::cos(params.drive_frequency * t) * x;
  return {space, std::move(h)};
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const SystemParams& params, double t) {
  params.validate();
  const FockSpace& space = rho.space();
  const ComplexMatrix h = hamiltonian(space, params, t).entries();
  const ComplexMatrix a = annihilation(space).entries();
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix& r = rho.entries();

  const Complex i_unit(0.0, 1.0);
  ComplexMatrix rhs = -i_unit * (h * r - r * h);
  if (params.gamma > 0.0) {
    const ComplexMatrix n_op = ad * a;
    rhs += (params.gamma / 2.0) * (params.nbar + 1.0) *
           (2.0 * a * r * ad - n_op * r - r * n_op);
    if (params.nbar > 0.0) {
      const ComplexMatrix m_op = a * ad;
      rhs += (params.gamma / 2.0) * params.nbar * (2.0 * ad * r * a - m_op * r - r * m_op);
    }
  }
  return rhs;
}

namespace {

// Structure-exploiting evaluator for the master-equation right-hand side.
// With the quartic potential, H is banded with |i-j| <= 4 and the jump
// operators are single off-diagonals, so writing the RHS as
//   A rho + rho A' + gamma(nbar+1) a rho a' + gamma nbar a' rho a,
//   A = -iH - (gamma/2)[(nbar+1) a'a + nbar a a'],
// costs O(bw * dim^2) per evaluation instead of O(dim^3).
class RhsEvaluator {
 public:
  static constexpr int kBw = 4;

  RhsEvaluator(const FockSpace& space, const SystemParams& params)
      : dim_(space.dim), params_(params) {
    const ComplexMatrix h0 = hamiltonian(space, drive_free(params), 0.0).entries();
    for (auto& band : bands_) band = Eigen::VectorXcd::Zero(dim_);

    const Complex mi(0.0, -1.0);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        const Complex v = h0(i, j);
        if (v == Complex(0.0, 0.0)) continue;
        if (std::abs(i - j) > kBw)
          throw std::logic_error("lindblad: Hamiltonian exceeds the expected bandwidth");
        bands_[size_t(j - i + kBw)](i) += mi * v;
      }
    }
    // Hermitian damping part -(gamma/2)[(nbar+1) a'a + nbar a a'] is diagonal.
    for (int n = 0; n < dim_; ++n) {
      const double n_down = double(n);
      const double n_up = (n < dim_ - 1) ? double(n + 1) : 0.0;  // truncated a a'
      bands_[kBw](n) -= 0.5 * params_.gamma * ((params_.nbar + 1.0) * n_down + params_.nbar * n_up);
    }

    x_upper_ = Eigen::VectorXd(dim_ - 1);
    s_ = Eigen::VectorXd(dim_ - 1);
    for (int n = 0; n < dim_ - 1; ++n) {
      x_upper_(n) = std::sqrt(0.5 * double(n + 1));
      s_(n) = std::sqrt(double(n + 1));
    }

    driven_ = params_.drive_amplitude != 0.0;
    band_up_ = bands_[kBw + 1];
    band_down_ = bands_[kBw - 1];
    for (int o = 0; o <= 2 * kBw; ++o) {
      const bool is_first_off = std::abs(o - kBw) == 1;
      const bool nonzero = bands_[size_t(o)].cwiseAbs().maxCoeff() > 0.0;
      if (is_first_off ? (nonzero || driven_) : nonzero) active_offsets_.push_back(o - kBw);
    }
    gamma_down_ = params_.gamma * (params_.nbar + 1.0);
    gamma_up_ = params_.gamma * params_.nbar;
  }

  /// out = RHS(rho, t). rho must be dim x dim.
  void operator()(const ComplexMatrix& rho, double t, ComplexMatrix& out) {
    if (driven_) {
      const Complex ic(0.0, params_.drive_amplitude * std::cos(params_.drive_frequency * t));
      // -iH picks up +i F cos(w t) x on the two first off-diagonals.
      band_up_ = bands_[kBw + 1];
      band_down_ = bands_[kBw - 1];
      for (int i = 0; i < dim_ - 1; ++i) {
        band_up_(i) += ic * x_upper_(i);
        band_down_(i + 1) += ic * x_upper_(i);
      }
    }

    out.setZero(dim_, dim_);
    const int d = dim_;
    for (int j = 0; j < d; ++j) {
      auto cj = out.col(j);
      // A rho: banded matrix times column.
      for (int off : active_offsets_) {
        const auto& band = band_for(off);
        const int i0 = std::max(0, -off);
        const int i1 = std::min(d, d - off);
        const int len = i1 - i0;
        if (len > 0)
          cj.segment(i0, len).array() +=
              band.segment(i0, len).array() * rho.col(j).segment(i0 + off, len).array();
      }
    }
    // rho A': column j accumulates conj(A(j, j+off)) * rho.col(j+off).
    for (int off : active_offsets_) {
      const auto& band = band_for(off);
      const int j0 = std::max(0, -off);
      const int j1 = std::min(d, d - off);
      for (int j = j0; j < j1; ++j) out.col(j) += std::conj(band(j)) * rho.col(j + off);
    }
    // Jump terms: (a rho a')(i,j) = s_i s_j rho(i+1, j+1) and
    //             (a' rho a)(i,j) = s_{i-1} s_{j-1} rho(i-1, j-1).
    if (gamma_down_ > 0.0) {
      for (int j = 0; j < d - 1; ++j)
        out.col(j).head(d - 1).array() +=
            (gamma_down_ * s_(j)) * s_.array() * rho.col(j + 1).tail(d - 1).array();
    }
    if (gamma_up_ > 0.0) {
      for (int j = 1; j < d; ++j)
        out.col(j).tail(d - 1).array() +=
            (gamma_up_ * s_(j - 1)) * s_.array() * rho.col(j - 1).head(d - 1).array();
    }
  }

 private:
  static SystemParams drive_free(SystemParams p) {
    p.drive_amplitude = 0.0;
    return p;
  }

  const Eigen::VectorXcd& band_for(int off) const {
    if (off == 1) return band_up_;
    if (off == -1) return band_down_;
    return bands_[size_t(off + kBw)];
  }

  int dim_;
  SystemParams params_;
  std::array<Eigen::VectorXcd, 2 * kBw + 1> bands_;
  Eigen::VectorXcd band_up_, band_down_;
  Eigen::VectorXd x_upper_;
  Eigen::VectorXd s_;
  std::vector<int> active_offsets_;
  bool driven_ = false;
  double gamma_down_ = 0.0, gamma_up_ = 0.0;
};

}  // namespace

int Trajectory::index_at(double t, double tol) const {
  int best = -1;
  double best_err = tol;
  for (size_t i = 0; i < times.size(); ++i) {
    const double err = std::abs(times[i] - t);
    if (err <= best_err) {
      best_err = err;
      best = int(i);
    }
  }
  if (best < 0)
    throw std::invalid_argument("Trajectory: no snapshot within " + std::to_string(tol) +
                                " of t = " + std::to_string(t));
  return best;
}

Trajectory integrate(const DensityMatrix& rho0, const SystemParams& params, double t_final,
                     double dt, const std::vector<double>& snapshot_times,
                     IntegrationDiagnostics* diagnostics) {
  params.validate();
  if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be > 0");
  if (t_final < 0.0) throw std::invalid_argument("integrate: t_final must be >= 0");

  const long n_steps = std::lround(t_final / dt);
  std::vector<long> snap_steps;
  snap_steps.reserve(snapshot_times.size());
  for (double t : snapshot_times) {
    if (t < -1e-12 || t > t_final * (1.0 + 1e-12) + 1e-12)
      throw std::invalid_argument("integrate: snapshot time " + std::to_string(t) +
                                  " outside [0, t_final]");
    snap_steps.push_back(std::clamp(std::lround(t / dt), 0L, n_steps));
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

  const int d = rho0.dim();
  RhsEvaluator rhs(rho0.space(), params);

  ComplexMatrix rho = rho0.entries();
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);

  Trajectory traj;
  traj.params = params;
  IntegrationDiagnostics diag;

  size_t next_snap = 0;
  auto record = [&](long step) {
    while (next_snap < snap_steps.size() && snap_steps[next_snap] == step) {
      traj.times.push_back(double(step) * dt);
      traj.states.emplace_back(rho0.space(), rho, 2e-4);
      ++next_snap;
    }
  };
  auto check_diagnostics = [&](long step) {
    const Complex tr = rho.trace();
    const double drift = std::abs(tr.real() - 1.0) + std::abs(tr.imag());
    const double top = rho(d - 1, d - 1).real();
    diag.max_trace_drift = std::max(diag.max_trace_drift, drift);
    diag.max_top_occupancy = std::max(diag.max_top_occupancy, top);
    if (drift > 1e-4)
      throw TruncationError("integrate: trace drift " + std::to_string(drift) + " at t = " +
                            std::to_string(double(step) * dt) + " exceeds 1e-4");
    if (top > 1e-6)
      throw TruncationError("integrate: top-level occupancy " + std::to_string(top) + " at t = " +
                            std::to_string(double(step) * dt) + " exceeds 1e-6");
  };

  check_diagnostics(0);
  record(0);
  for (long step = 0; step < n_steps; ++step) {
    const double t = double(step) * dt;
    rhs(rho, t, k1);
    stage = rho + (0.5 * dt) * k1;
    rhs(stage, t + 0.5 * dt, k2);
    stage = rho + (0.5 * dt) * k2;
    rhs(stage, t + 0.5 * dt, k3);
    stage = rho + dt * k3;
    rhs(stage, t + dt, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // Re-symmetrize: the generator preserves hermiticity exactly, this
    // removes the rounding-level drift so snapshots stay valid states.
    stage = rho.adjoint();
    rho = 0.5 * (rho + stage);

    check_diagnostics(step + 1);
    record(step + 1);
  }
  diag.steps = n_steps;
  if (diagnostics) *diagnostics = diag;
  return traj;
}

SteadyStateCheck steady_state_check(const Trajectory& traj, double period, double tol) {
  if (period <= 0.0) throw std::invalid_argument("steady_state_check: period must be > 0");
  if (traj.times.size() < 2)
    throw std::invalid_argument("steady_state_check: trajectory needs at least two snapshots");

  const double t_late = traj.times.back();
  const int late = int(traj.times.size()) - 1;
  const int early = traj.index_at(t_late - period, period / 100.0);

  SteadyStateCheck out;
  out.t_late = t_late;
  out.t_early = traj.times[size_t(early)];
  out.distance =
      (traj.states[size_t(late)].entries() - traj.states[size_t(early)].entries()).cwiseAbs().maxCoeff();
  out.steady = out.distance <= tol;
  return out;
}

}  // namespace wflow
