#include <doctest.h>

#include <cmath>

#include <wflow/errors.hpp>
#include <wflow/lindblad.hpp>

using namespace wflow;

namespace {

SystemParams harmonic_damped(double gamma, double nbar = 0.0) {
  SystemParams p;
  p.gamma = gamma;
  p.nbar = nbar;
  return p;
}

}  // namespace

TEST_CASE("hamiltonian: harmonic diagonal") {
  const FockSpace space(10);
  const auto h = hamiltonian(space, SystemParams{}, 0.0).entries();
  // Truncation taints only the last diagonal entry.
  for (int n = 0; n < space.dim - 1; ++n)
    CHECK(h(n, n).real() == doctest::Approx(n + 0.5).epsilon(1e-14));
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hamiltonian: quartic shift of the vacuum expectation") {
  // Oracle: Gaussian moment <0|x^4|0> = 3 (1/2)^2 = 3/4, so
  // <0|H|0> = 0.5 + (0.05/4) * 0.75 = 0.509375.
  const FockSpace space(12);
  SystemParams p;
  p.lambda = 0.05;
  const auto h = hamiltonian(space, p, 3.7).entries();
  CHECK(h(0, 0).real() == doctest::Approx(0.509375).epsilon(1e-12));
}

TEST_CASE("hamiltonian: drive term at t = 0") {
  const FockSpace space(8);
  SystemParams p;
  p.lambda = 0.05;
  p.drive_amplitude = 0.092;
  p.drive_frequency = 1.09;
  const auto h0 = hamiltonian(space, p, 0.0).entries();
  SystemParams no_drive = p;
  no_drive.drive_amplitude = 0.0;
  const auto h_free = hamiltonian(space, no_drive, 0.0).entries();
  const auto x = position(space).entries();
  CHECK((h0 - (h_free - 0.092 * x)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("lindblad_rhs: vacuum is the T=0 fixed point") {
  const FockSpace space(10);
  const auto rhs = lindblad_rhs(fock_state(space, 0), harmonic_damped(0.01), 0.0);
  CHECK(rhs.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("lindblad_rhs: rate equations for |1><1|") {
  const FockSpace space(10);
  const auto rhs = lindblad_rhs(fock_state(space, 1), harmonic_damped(0.01), 0.0);
  CHECK(rhs(1, 1).real() == doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(rhs(0, 0).real() == doctest::Approx(+0.01).epsilon(1e-12));
}

TEST_CASE("lindblad_rhs: traceless and hermitian for a generic state") {
  const FockSpace space(14);
  const auto rho = coherent_state(space, Complex(1.0, 0.8));
  SystemParams p;
  p.lambda = 0.05;
  p.drive_amplitude = 0.092;
  p.drive_frequency = 1.09;
  p.gamma = 0.01;
  p.nbar = 1.5;
  const auto rhs = lindblad_rhs(rho, p, 0.4);
  CHECK(std::abs(rhs.trace()) < 1e-12);
  CHECK((rhs - rhs.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lindblad_rhs: thermal state is the fixed point at T > 0") {
  const FockSpace space(30);
  const double nbar = 1.5414940825367982;  // T = 2 hbar omega0 / kB
  // Truncated geometric state, renormalized.
  ComplexMatrix th = ComplexMatrix::Zero(space.dim, space.dim);
  const double q = nbar / (nbar + 1.0);
  double z = 0.0;
  for (int n = 0; n < space.dim; ++n) z += std::pow(q, n);
  for (int n = 0; n < space.dim; ++n) th(n, n) = std::pow(q, n) / z;
  const DensityMatrix thermal(space, th);
  const auto rhs = lindblad_rhs(thermal, harmonic_damped(0.01, nbar), 0.0);
  CHECK(rhs.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("integrate: vacuum stays the vacuum") {
  const FockSpace space(8);
  const auto traj =
      integrate(fock_state(space, 0), harmonic_damped(0.01), 10.0, 0.01, {0.0, 5.0, 10.0});
  REQUIRE(traj.times.size() == 3);
  CHECK((traj.states.back().entries() - fock_state(space, 0).entries()).cwiseAbs().maxCoeff() <
        1e-13);
}

TEST_CASE("integrate: Fock decay follows the analytic cascade") {
  // Oracle: rho_11(t) = e^{-gamma t} for the N=1 state at T=0.
  const FockSpace space(8);
  const auto traj =
      integrate(fock_state(space, 1), harmonic_damped(0.01), 100.0, kFreePeriod / 500.0,
                {0.0, 50.0, 100.0});
  // Snapshots sit on the dt grid and are recorded exactly; compare there.
  const double rho11 = traj.states.back().entries()(1, 1).real();
  CHECK(std::abs(rho11 - std::exp(-0.01 * traj.times.back())) < 1e-5);
  const double rho11_mid = traj.states[1].entries()(1, 1).real();
  CHECK(std::abs(rho11_mid - std::exp(-0.01 * traj.times[1])) < 1e-5);
}

TEST_CASE("integrate: damped coherent state follows <a>(t) = alpha e^{-it - gamma t/2}") {
  const FockSpace space(30);
  const double t_final = 2.0 * M_PI;
  const auto traj = integrate(coherent_state(space, Complex(1.0, 0.0)), harmonic_damped(0.01),
                              t_final, kFreePeriod / 500.0, {t_final});
  const auto a = annihilation(space);
  const Complex got = expectation(traj.states.back(), a);
  const Complex expected =
      std::exp(Complex(0.0, -t_final)) * std::exp(-0.01 * t_final / 2.0) * Complex(1.0, 0.0);
  CHECK(std::abs(got - expected) < 1e-5);
}

TEST_CASE("integrate: snapshots land on the nearest grid times") {
  const FockSpace space(4);
  const auto traj = integrate(fock_state(space, 0), SystemParams{}, 1.0, 0.1, {0.0, 0.24, 0.9999});
  REQUIRE(traj.times.size() == 3);
  CHECK(traj.times[0] == doctest::Approx(0.0));
  CHECK(traj.times[1] == doctest::Approx(0.2));
  CHECK(traj.times[2] == doctest::Approx(1.0));
}

TEST_CASE("integrate: trace preserved and purity monotone early in the decay") {
  const FockSpace space(12);
  std::vector<double> snaps;
  for (int k = 0; k <= 16; ++k) snaps.push_back(k * kFreePeriod / 2.0);
  IntegrationDiagnostics diag;
  const auto traj = integrate(fock_state(space, 2), harmonic_damped(0.01), snaps.back(),
                              kFreePeriod / 500.0, snaps, &diag);
  CHECK(diag.max_trace_drift < 1e-6);
  double prev_purity = 1.0 + 1e-12;
  for (const auto& state : traj.states) {
    CHECK(std::abs(state.trace_real() - 1.0) < 1e-6);
    const double purity = state.purity();
    CHECK(purity <= prev_purity + 1e-9);
    prev_purity = purity;
  }
}

TEST_CASE("integrate: RK4 order holds on the damped coherent state") {
  const FockSpace space(16);
  const auto rho0 = coherent_state(space, Complex(0.8, 0.0));
  const SystemParams p = harmonic_damped(0.05);
  const double t_final = 2.0;
  const double dt = 0.02;
  const auto run = [&](double step) {
    return integrate(rho0, p, t_final, step, {t_final}).states.back().entries();
  };
  const auto ref = run(dt / 4.0);
  const double e_coarse = (run(dt) - ref).cwiseAbs().maxCoeff();
  const double e_fine = (run(dt / 2.0) - ref).cwiseAbs().maxCoeff();
  CHECK(e_coarse / e_fine >= 12.0);
}

TEST_CASE("integrate: optimized evaluator matches the definitional RHS") {
  const FockSpace space(12);
  SystemParams p;
  p.lambda = 0.05;
  p.drive_amplitude = 0.092;
  p.drive_frequency = 1.09;
  p.gamma = 0.01;
  p.nbar = 1.5414940825367982;
  const auto rho0 = coherent_state(space, Complex(0.9, -0.3));

  // One RK4 step by hand from the public definitional RHS.
  const double dt = 1e-3;
  const auto rhs_at = [&](const ComplexMatrix& m, double t) {
    return lindblad_rhs(DensityMatrix(space, m, 1e-3), p, t);
  };
  const ComplexMatrix r = rho0.entries();
  const ComplexMatrix k1 = rhs_at(r, 0.0);
  const ComplexMatrix k2 = rhs_at(r + 0.5 * dt * k1, 0.5 * dt);
  const ComplexMatrix k3 = rhs_at(r + 0.5 * dt * k2, 0.5 * dt);
  const ComplexMatrix k4 = rhs_at(r + dt * k3, dt);
  ComplexMatrix manual = r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  manual = 0.5 * (manual + manual.adjoint()).eval();

  const auto traj = integrate(rho0, p, dt, dt, {dt});
  CHECK((traj.states.back().entries() - manual).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("integrate: truncation failure raises a named diagnostic") {
  const FockSpace space(6);
  // A strong drive walks the state off the tiny truncated space quickly.
  SystemParams p;
  p.drive_amplitude = 2.0;
  p.drive_frequency = 1.0;
  CHECK_THROWS_AS(integrate(fock_state(space, 0), p, 50.0, 0.01, {50.0}), TruncationError);
  try {
    integrate(fock_state(space, 0), p, 50.0, 0.01, {50.0});
  } catch (const TruncationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("occupancy") != std::string::npos);
  }
}

TEST_CASE("steady_state_check") {
  const FockSpace space(8);
  SUBCASE("vacuum fixed point has zero distance") {
    const auto traj = integrate(fock_state(space, 0), harmonic_damped(0.01), 2.0 * kFreePeriod,
                                0.01, {0.0, kFreePeriod, 2.0 * kFreePeriod});
    const auto check = steady_state_check(traj, kFreePeriod, 1e-3);
    CHECK(check.distance < 1e-13);
    CHECK(check.steady);
  }
  SUBCASE("missing snapshot throws") {
    const auto traj =
        integrate(fock_state(space, 0), harmonic_damped(0.01), 1.0, 0.01, {0.0, 1.0});
    CHECK_THROWS_AS(steady_state_check(traj, 0.5, 1e-3), std::invalid_argument);
  }
}

TEST_CASE("params validation") {
  SystemParams p;
  p.gamma = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.gamma = 0.0;
  p.drive_amplitude = 0.1;
  p.drive_frequency = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
