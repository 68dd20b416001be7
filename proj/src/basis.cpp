// SPDX-License-Identifier: Apache-2.0

#include "rtslip/basis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace rtslip
{

namespace
{

// Chebyshev coefficients of the derivative of sum a_m T_m.
Eigen::VectorXd chebyshev_derivative(const Eigen::VectorXd &a)
{
  const int n = static_cast<int>(a.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  if (n < 2)
  {
    return b;
  }
  // b_{m-1} = b_{m+1} + 2 m a_m, descending; the m = 0 row carries a half.
  for (int m = n - 1; m >= 1; --m)
  {
    const double upper = (m + 1 < n) ? b[m + 1] : 0.0;
    b[m - 1] = upper + 2.0 * m * a[m];
  }
  b[0] *= 0.5;
  return b;
}

// Clenshaw evaluation of sum a_m T_m(x).
double clenshaw(const Eigen::VectorXd &a, double x)
{
  double b1 = 0.0, b2 = 0.0;
  for (int m = static_cast<int>(a.size()) - 1; m >= 1; --m)
  {
    const double b0 = 2.0 * x * b1 - b2 + a[m];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + a[0];
}

// Chebyshev coefficient vector of psi_j = T_{j+2} - T_j.
Eigen::VectorXd basis_chebyshev_coeffs(int j, int size)
{
  Eigen::VectorXd a = Eigen::VectorXd::Zero(size);
  a[j + 2] += 1.0;
  a[j] -= 1.0;
  return a;
}

}  // namespace

QuadratureRule gauss_legendre(int n)
{
  if (n < 1)
  {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i)
  {
    // Newton iteration on P_n from the Chebyshev-angle initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter)
    {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m)
      {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
  {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

SpectralBasis build_basis(int n_modes)
{
  if (n_modes < 4)
  {
    throw std::invalid_argument("build_basis: n_modes must be at least 4");
  }
  SpectralBasis basis;
  basis.n_modes = n_modes;

  // 2n+2 nodes: exact for degree 4n+3, comfortably past the 2(n+2)+4 needed
  // for products of basis functions against low-degree densities.
  const QuadratureRule rule = gauss_legendre(2 * n_modes + 2);
  basis.quad_nodes = rule.nodes;
  basis.quad_weights = rule.weights;
  const int nq = static_cast<int>(rule.nodes.size());

  for (auto &mat : basis.deriv_values)
  {
    mat.resize(n_modes, nq);
  }
  basis.trace_d1_minus.resize(n_modes);
  basis.trace_d1_plus.resize(n_modes);
  basis.trace_d2_minus.resize(n_modes);
  basis.trace_d2_plus.resize(n_modes);

  const int size = n_modes + 2;
  for (int j = 0; j < n_modes; ++j)
  {
    Eigen::VectorXd a = basis_chebyshev_coeffs(j, size);
    for (int order = 0; order <= 4; ++order)
    {
      for (int q = 0; q < nq; ++q)
      {
        basis.deriv_values[order](j, q) = clenshaw(a, rule.nodes[q]);
      }
      if (order == 1)
      {
        basis.trace_d1_minus[j] = clenshaw(a, -1.0);
        basis.trace_d1_plus[j] = clenshaw(a, 1.0);
      }
      else if (order == 2)
      {
        basis.trace_d2_minus[j] = clenshaw(a, -1.0);
        basis.trace_d2_plus[j] = clenshaw(a, 1.0);
      }
      a = chebyshev_derivative(a);
    }
  }
  return basis;
}

Eigen::VectorXd evaluate_expansion(const SpectralBasis &basis, const Eigen::VectorXd &coeffs,
                                   const Eigen::VectorXd &points, int order)
{
  if (coeffs.size() != basis.n_modes)
  {
    throw std::invalid_argument("evaluate_expansion: coefficient size mismatch");
  }
  if (order < 0 || order > 4)
  {
    throw std::invalid_argument("evaluate_expansion: derivative order must be in 0..4");
  }
  for (int i = 0; i < points.size(); ++i)
  {
    if (points[i] < -1.0 - 1e-12 || points[i] > 1.0 + 1e-12)
    {
      throw std::invalid_argument("evaluate_expansion: point outside [-1,1]");
    }
  }
  // Collapse to one Chebyshev series, differentiate exactly, then Clenshaw.
  Eigen::VectorXd a = Eigen::VectorXd::Zero(basis.n_modes + 2);
  for (int j = 0; j < basis.n_modes; ++j)
  {
    a[j + 2] += coeffs[j];
    a[j] -= coeffs[j];
  }
  for (int d = 0; d < order; ++d)
  {
    a = chebyshev_derivative(a);
  }
  Eigen::VectorXd out(points.size());
  for (int i = 0; i < points.size(); ++i)
  {
    out[i] = clenshaw(a, points[i]);
  }
  return out;
}

Eigen::MatrixXd mass_matrix(const SpectralBasis &basis)
{
  const Eigen::MatrixXd &v0 = basis.values(0);
  Eigen::MatrixXd g = v0 * basis.quad_weights.asDiagonal() * v0.transpose();
  return 0.5 * (g + g.transpose());
}

Eigen::VectorXd project_function(const SpectralBasis &basis,
                                 const std::function<double(double)> &f)
{
  const int nq = static_cast<int>(basis.quad_nodes.size());
  Eigen::VectorXd fv(nq);
  for (int q = 0; q < nq; ++q)
  {
    fv[q] = f(basis.quad_nodes[q]);
  }
  const Eigen::VectorXd rhs = basis.values(0) * basis.quad_weights.cwiseProduct(fv);
  return mass_matrix(basis).ldlt().solve(rhs);
}

}  // namespace rtslip
