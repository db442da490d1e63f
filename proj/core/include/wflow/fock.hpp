#pragma once

#include <complex>

#include <Eigen/Dense>

namespace wflow {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Truncated Fock space spanned by |0>..|dim-1>. All operators and states
/// live in dimensionless units: hbar = m = omega0 = 1, so x = (a + a')/sqrt(2)
/// and p = -i(a - a')/sqrt(2).
struct FockSpace {
  int dim;

  explicit FockSpace(int dim_);

  friend bool operator==(const FockSpace& a, const FockSpace& b) { return a.dim == b.dim; }
};

/// Dense operator on a truncated Fock space.
class OperatorMatrix {
 public:
  OperatorMatrix(FockSpace space, ComplexMatrix entries);

  const FockSpace& space() const { return space_; }
  const ComplexMatrix& entries() const { return entries_; }

  bool is_hermitian(double tol = 1e-12) const;

 private:
  FockSpace space_;
  ComplexMatrix entries_;
};

/// Density matrix on a truncated Fock space. Construction enforces
/// hermiticity (1e-10 entrywise) and unit trace (within trace_tol).
/// Positivity is expensive and checked on demand via min_eigenvalue().
class DensityMatrix {
 public:
  DensityMatrix(FockSpace space, ComplexMatrix entries, double trace_tol = 1e-8);

  const FockSpace& space() const { return space_; }
  const ComplexMatrix& entries() const { return entries_; }
  int dim() const { return space_.dim; }

  double trace_real() const { return entries_.trace().real(); }
  double purity() const;           // tr(rho^2)
  double min_eigenvalue() const;   // smallest eigenvalue, on-demand positivity check
  double top_level_occupancy() const { return entries_(space_.dim - 1, space_.dim - 1).real(); }

 private:
  FockSpace space_;
  ComplexMatrix entries_;
};

OperatorMatrix annihilation(const FockSpace& space);
OperatorMatrix creation(const FockSpace& space);
OperatorMatrix position(const FockSpace& space);
OperatorMatrix momentum(const FockSpace& space);

/// rho = |n><n|.
DensityMatrix fock_state(const FockSpace& space, int n);

/// Truncated coherent state |alpha>, renormalized after truncation.
/// Requires |alpha|^2 <= dim/4 so the Poisson tail fits the truncation.
DensityMatrix coherent_state(const FockSpace& space, Complex alpha);

/// Even superposition N(|alpha> + |-alpha>) with real alpha = separation/(2 sqrt(2)),
/// placing the two Gaussian peaks of W at x = +-separation/2.
DensityMatrix cat_state(const FockSpace& space, double separation);

/// tr(rho A).
Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op);

}  // namespace wflow
