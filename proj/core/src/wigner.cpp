#include "wflow/wigner.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "wflow/detail/parallel.hpp"

namespace wflow {

namespace {

// rho diagonals repacked for contiguous access: diag k holds rho(m, m+k).
struct DiagonalData {
  std::vector<std::vector<double>> re, im;
  std::vector<int> m_count;  // entries per diagonal after trailing-zero trim
};

DiagonalData pack_diagonals(const ComplexMatrix& rho) {
  const int dim = int(rho.rows());
  DiagonalData d;
  d.re.resize(size_t(dim));
  d.im.resize(size_t(dim));
  d.m_count.assign(size_t(dim), 0);
  for (int k = 0; k < dim; ++k) {
    const int len = dim - k;
    int last = -1;
    for (int m = 0; m < len; ++m)
      if (std::abs(rho(m, m + k)) > 1e-18) last = m;
    d.m_count[size_t(k)] = last + 1;
    d.re[size_t(k)].resize(size_t(last + 1));
    d.im[size_t(k)].resize(size_t(last + 1));
    for (int m = 0; m <= last; ++m) {
      d.re[size_t(k)][size_t(m)] = rho(m, m + k).real();
      d.im[size_t(k)][size_t(m)] = rho(m, m + k).imag();
    }
  }
  return d;
}

// coef[k][m] = (-1)^m sqrt(m! / (m+k)!); always <= 1 in magnitude.
std::vector<std::vector<double>> kernel_coefficients(int dim) {
  std::vector<std::vector<double>> coef;
  coef.resize(size_t(dim));
  for (int k = 0; k < dim; ++k) {
    coef[size_t(k)].resize(size_t(dim - k));
    double c0 = 1.0;
    for (int j = 1; j <= k; ++j) c0 /= std::sqrt(double(j));
    coef[size_t(k)][0] = c0;
    for (int m = 1; m < dim - k; ++m)
      coef[size_t(k)][size_t(m)] =
          -coef[size_t(k)][size_t(m - 1)] * std::sqrt(double(m) / double(m + k));
  }
  return coef;
}

}  // namespace

ScalarField wigner_transform(const DensityMatrix& rho, const PhaseSpaceGrid& grid) {
  const int dim = rho.dim();
  const DiagonalData diag = pack_diagonals(rho.entries());
  const auto coef = kernel_coefficients(dim);

  ScalarField w(grid);
  const double inv_pi = 1.0 / M_PI;

  detail::parallel_chunks(0, grid.nx, [&](int i_lo, int i_hi) {
    for (int i = i_lo; i < i_hi; ++i) {
      const double x = grid.x(i);
      for (int j = 0; j < grid.np; ++j) {
        const double p = grid.p(j);
        const double r2 = x * x + p * p;
        const double y = 2.0 * r2;
        const double envelope = std::exp(-r2) * inv_pi;
        const double b_re = std::sqrt(2.0) * x;
        const double b_im = std::sqrt(2.0) * p;

        double acc = 0.0;
        double bk_re = 1.0, bk_im = 0.0;  // B^k, B = sqrt(2)(x + ip)
        for (int k = 0; k < dim; ++k) {
          if (k > 0) {
            const double t_re = bk_re * b_re - bk_im * b_im;
            bk_im = bk_re * b_im + bk_im * b_re;
            bk_re = t_re;
          }
          const int m_count = diag.m_count[size_t(k)];
          if (m_count == 0) continue;
          const double* rho_re = diag.re[size_t(k)].data();
          const double* rho_im = diag.im[size_t(k)].data();
          const double* c = coef[size_t(k)].data();

          // Upward recurrence in m at fixed order k:
          //   L_0^k = 1,  L_1^k = 1 + k - y,
          //   m L_m^k = (2m - 1 + k - y) L_{m-1}^k - (m - 1 + k) L_{m-2}^k.
          double l_prev2 = 0.0, l_prev = 0.0;
          for (int m = 0; m < m_count; ++m) {
            double l;
            if (m == 0)
              l = 1.0;
            else if (m == 1)
              l = 1.0 + k - y;
            else
              l = ((2.0 * m - 1.0 + k - y) * l_prev - (m - 1.0 + k) * l_prev2) / double(m);
            l_prev2 = l_prev;
            l_prev = l;

            const double radial = c[m] * envelope * l;
            if (k == 0)
              acc += rho_re[m] * radial;
            else
              acc += 2.0 * (rho_re[m] * bk_re - rho_im[m] * bk_im) * radial;
          }
        }
        w.values(i, j) = acc;
      }
    }
  });

  if (!w.values.isFinite().all())
    throw std::runtime_error("wigner_transform: non-finite values produced");
  const double edge = boundary_max_abs(w);
  if (edge >= 1e-6)
    std::cerr << "wigner_transform: warning: |W| = " << edge
              << " at the grid boundary; grid may be too small for the state\n";
  return w;
}

double boundary_max_abs(const ScalarField& w) {
  const int nx = w.grid.nx, np = w.grid.np;
  double edge = w.values.row(0).abs().maxCoeff();
  edge = std::max(edge, w.values.row(nx - 1).abs().maxCoeff());
  edge = std::max(edge, w.values.col(0).abs().maxCoeff());
  edge = std::max(edge, w.values.col(np - 1).abs().maxCoeff());
  return edge;
}

Marginals marginals(const ScalarField& w) {
  const int nx = w.grid.nx, np = w.grid.np;
  Marginals m;
  m.x_density.resize(size_t(nx));
  m.p_density.resize(size_t(np));
  for (int i = 0; i < nx; ++i) {
    const double inner = w.values.row(i).sum() - 0.5 * (w.values(i, 0) + w.values(i, np - 1));
    m.x_density[size_t(i)] = inner * w.grid.dp();
  }
  for (int j = 0; j < np; ++j) {
    const double inner = w.values.col(j).sum() - 0.5 * (w.values(0, j) + w.values(nx - 1, j));
    m.p_density[size_t(j)] = inner * w.grid.dx();
  }
  return m;
}

namespace {

enum class Axis { X, P };

// 4th-order first-derivative stencils; one-sided rows near the boundary.
void first_derivative(const Eigen::ArrayXXd& in, Eigen::ArrayXXd& out, double h, Axis axis) {
  const int n = axis == Axis::X ? int(in.rows()) : int(in.cols());
  if (n < 5) throw std::invalid_argument("derivative: need at least 5 points per axis");
  const double inv = 1.0 / (12.0 * h);

  auto line = [&](int idx) {
    return axis == Axis::X ? Eigen::ArrayXXd(in.row(idx).transpose()) : Eigen::ArrayXXd(in.col(idx));
  };
  auto store = [&](int idx, const Eigen::ArrayXXd& v) {
    if (axis == Axis::X)
      out.row(idx) = v.transpose();
    else
      out.col(idx) = v;
  };

  if (axis == Axis::X) {
    out.block(2, 0, n - 4, in.cols()) =
        (in.block(0, 0, n - 4, in.cols()) - 8.0 * in.block(1, 0, n - 4, in.cols()) +
         8.0 * in.block(3, 0, n - 4, in.cols()) - in.block(4, 0, n - 4, in.cols())) *
        inv;
  } else {
    out.block(0, 2, in.rows(), n - 4) =
        (in.block(0, 0, in.rows(), n - 4) - 8.0 * in.block(0, 1, in.rows(), n - 4) +
         8.0 * in.block(0, 3, in.rows(), n - 4) - in.block(0, 4, in.rows(), n - 4)) *
        inv;
  }

  store(0, (-25.0 * line(0) + 48.0 * line(1) - 36.0 * line(2) + 16.0 * line(3) - 3.0 * line(4)) * inv);
  store(1, (-3.0 * line(0) - 10.0 * line(1) + 18.0 * line(2) - 6.0 * line(3) + line(4)) * inv);
  store(n - 2, (-line(n - 5) + 6.0 * line(n - 4) - 18.0 * line(n - 3) + 10.0 * line(n - 2) +
                3.0 * line(n - 1)) *
                   inv);
  store(n - 1, (3.0 * line(n - 5) - 16.0 * line(n - 4) + 36.0 * line(n - 3) - 48.0 * line(n - 2) +
                25.0 * line(n - 1)) *
                   inv);
}

// 4th-order second derivative along the momentum axis.
void second_derivative_p(const Eigen::ArrayXXd& in, Eigen::ArrayXXd& out, double h) {
  const int n = int(in.cols());
  if (n < 6) throw std::invalid_argument("derivative: need at least 6 points per axis");
  const double inv = 1.0 / (12.0 * h * h);

  out.block(0, 2, in.rows(), n - 4) =
      (-in.block(0, 0, in.rows(), n - 4) + 16.0 * in.block(0, 1, in.rows(), n - 4) -
       30.0 * in.block(0, 2, in.rows(), n - 4) + 16.0 * in.block(0, 3, in.rows(), n - 4) -
       in.block(0, 4, in.rows(), n - 4)) *
      inv;

  out.col(0) = (45.0 * in.col(0) - 154.0 * in.col(1) + 214.0 * in.col(2) - 156.0 * in.col(3) +
                61.0 * in.col(4) - 10.0 * in.col(5)) *
               inv;
  out.col(1) = (10.0 * in.col(0) - 15.0 * in.col(1) - 4.0 * in.col(2) + 14.0 * in.col(3) -
                6.0 * in.col(4) + in.col(5)) *
               inv;
  out.col(n - 2) = (in.col(n - 6) - 6.0 * in.col(n - 5) + 14.0 * in.col(n - 4) -
                    4.0 * in.col(n - 3) - 15.0 * in.col(n - 2) + 10.0 * in.col(n - 1)) *
                   inv;
  out.col(n - 1) = (-10.0 * in.col(n - 6) + 61.0 * in.col(n - 5) - 156.0 * in.col(n - 4) +
                    214.0 * in.col(n - 3) - 154.0 * in.col(n - 2) + 45.0 * in.col(n - 1)) *
                   inv;
}

}  // namespace

ScalarField partial_x(const ScalarField& w) {
  ScalarField out(w.grid);
  first_derivative(w.values, out.values, w.grid.dx(), Axis::X);
  return out;
}

ScalarField partial_p(const ScalarField& w) {
  ScalarField out(w.grid);
  first_derivative(w.values, out.values, w.grid.dp(), Axis::P);
  return out;
}

ScalarField partial_pp(const ScalarField& w) {
  ScalarField out(w.grid);
  second_derivative_p(w.values, out.values, w.grid.dp());
  return out;
}

}  // namespace wflow
