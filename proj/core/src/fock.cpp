#include "wflow/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wflow/errors.hpp"

namespace wflow {

FockSpace::FockSpace(int dim_) : dim(dim_) {
  if (dim < 2) throw std::invalid_argument("FockSpace: dim must be >= 2, got " + std::to_string(dim));
}

OperatorMatrix::OperatorMatrix(FockSpace space, ComplexMatrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim || entries_.cols() != space_.dim)
    throw std::invalid_argument("OperatorMatrix: entries shape does not match space.dim");
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(FockSpace space, ComplexMatrix entries, double trace_tol)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim || entries_.cols() != space_.dim)
    throw std::invalid_argument("DensityMatrix: entries shape does not match space.dim");
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw std::invalid_argument("DensityMatrix: not Hermitian, max |rho - rho'| = " + std::to_string(herm));
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol)
    throw std::invalid_argument("DensityMatrix: trace = " + std::to_string(tr.real()) + " + " +
                                std::to_string(tr.imag()) + "i, expected 1 within " +
                                std::to_string(trace_tol));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

OperatorMatrix annihilation(const FockSpace& space) {
  ComplexMatrix a = ComplexMatrix::Zero(space.dim, space.dim);
  for (int n = 1; n < space.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return {space, std::move(a)};
}

OperatorMatrix creation(const FockSpace& space) {
  return {space, annihilation(space).entries().adjoint()};
}

OperatorMatrix position(const FockSpace& space) {
  const ComplexMatrix a = annihilation(space).entries();
  return {space, (a + a.adjoint()) / std::sqrt(2.0)};
}

OperatorMatrix momentum(const FockSpace& space) {
  const ComplexMatrix a = annihilation(space).entries();
  return {space, Complex(0.0, -1.0) * (a - a.adjoint()) / std::sqrt(2.0)};
}

DensityMatrix fock_state(const FockSpace& space, int n) {
  if (n < 0 || n >= space.dim)
    throw std::out_of_range("fock_state: n = " + std::to_string(n) + " outside [0, " +
                            std::to_string(space.dim - 1) + "]");
  ComplexMatrix rho = ComplexMatrix::Zero(space.dim, space.dim);
  rho(n, n) = 1.0;
  return {space, std::move(rho)};
}

namespace {

// Truncated coherent amplitudes <n|alpha>, renormalized over the retained levels.
Eigen::VectorXcd coherent_amplitudes(const FockSpace& space, Complex alpha) {
  Eigen::VectorXcd c(space.dim);
  c(0) = 1.0;
  for (int n = 1; n < space.dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  c *= std::exp(-0.5 * std::norm(alpha));
  c /= c.norm();
  return c;
}

}  // namespace

DensityMatrix coherent_state(const FockSpace& space, Complex alpha) {
  if (std::norm(alpha) > space.dim / 4.0)
    throw std::invalid_argument("coherent_state: |alpha|^2 = " + std::to_string(std::norm(alpha)) +
                                " exceeds dim/4 = " + std::to_string(space.dim / 4.0) +
                                "; increase the truncation");
  const Eigen::VectorXcd c = coherent_amplitudes(space, alpha);
  return {space, c * c.adjoint()};
}

DensityMatrix cat_state(const FockSpace& space, double separation) {
  if (separation <= 0.0) throw std::invalid_argument("cat_state: separation must be > 0");
  const double alpha = separation / (2.0 * std::sqrt(2.0));
  if (alpha * alpha > space.dim / 4.0)
    throw std::invalid_argument("cat_state: (separation/2)^2/2 exceeds dim/4; increase the truncation");
  // Unnormalized truncated amplitudes of |alpha> and |-alpha>; for the even cat
  // only even Fock components survive. Normalization includes the <alpha|-alpha>
  // overlap automatically through the explicit norm below.
  Eigen::VectorXcd plus(space.dim), minus(space.dim);
  plus(0) = minus(0) = 1.0;
  for (int n = 1; n < space.dim; ++n) {
    plus(n) = plus(n - 1) * alpha / std::sqrt(double(n));
    minus(n) = minus(n - 1) * (-alpha) / std::sqrt(double(n));
  }
  Eigen::VectorXcd c = plus + minus;
  c /= c.norm();
  return {space, c * c.adjoint()};
}

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
  if (!(rho.space() == op.space()))
    throw std::invalid_argument("expectation: state and operator live on different spaces");
  return (rho.entries() * op.entries()).trace();
}

}  // namespace wflow
