#pragma once

#include <vector>

#include "wflow/fock.hpp"
#include "wflow/phase_space.hpp"

namespace wflow {

/// Wigner transform of a density matrix onto a grid, evaluated through the
/// closed-form Fock-basis kernel: with r^2 = x^2 + p^2 and B = sqrt(2)(x + ip),
///   K_nn = ((-1)^n / pi) e^{-r^2} L_n(2 r^2),
///   K_mn = ((-1)^m / pi) sqrt(m!/n!) e^{-r^2} B^{n-m} L_m^{n-m}(2 r^2),  m < n,
/// accumulated as the real part of the Hermitian sum over rho_{mn}.
/// Emits a diagnostic warning on stderr if |W| at the grid boundary
/// exceeds 1e-6 (grid too small for the state).
ScalarField wigner_transform(const DensityMatrix& rho, const PhaseSpaceGrid& grid);

/// Largest |W| on the outermost grid ring; the boundary-decay diagnostic.
double boundary_max_abs(const ScalarField& w);

struct Marginals {
  std::vector<double> x_density;  // integral of W over p, at each x
  std::vector<double> p_density;  // integral of W over x, at each p
};

/// Trapezoidal marginals along each axis.
Marginals marginals(const ScalarField& w);

/// d/dx, d/dp and d^2/dp^2 via 4th-order five-point stencils in the interior
/// and one-sided 4th-order stencils within two cells of the boundary.
ScalarField partial_x(const ScalarField& w);
ScalarField partial_p(const ScalarField& w);
ScalarField partial_pp(const ScalarField& w);

}  // namespace wflow
