// SPDX-License-Identifier: Apache-2.0

#include "rtslip/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rtslip/critical.hpp"
#include "rtslip/errors.hpp"

namespace rtslip
{

namespace
{

int sign_change_count(const Eigen::VectorXd &values)
{
  int count = 0;
  double prev = 0.0;
  for (int i = 0; i < values.size(); ++i)
  {
    const double v = values[i];
    if (v == 0.0)
    {
      continue;
    }
    if (prev != 0.0 && std::signbit(v) != std::signbit(prev))
    {
      ++count;
    }
    prev = v;
  }
  return count;
}

}  // namespace

SpectrumSlice gamma_spectrum(const AssembledOperators &ops, double lambda, double mu, int m)
{
  const int n = static_cast<int>(ops.K_visc.rows());
  if (m < 1 || m > n)
  {
    throw std::invalid_argument("gamma_spectrum: need 1 <= m <= n_modes");
  }
  if (lambda < 0.0)
  {
    throw std::invalid_argument("gamma_spectrum: lambda must be >= 0");
  }
  if (coercivity_margin(ops, 0.0, mu) <= 0.0)
  {
    throw SubcriticalViscosityError(
        "gamma_spectrum: mu is at or below the critical viscosity mu_c(k, Xi)",
        mu_c_closed_form(std::abs(ops.k), ops.slip));
  }

  // M_rho' phi = gamma B phi with B positive definite; Eigen reduces through
  // the Cholesky factor of B, eigenvalues ascending, vectors B-orthonormal.
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      ops.M_rho_prime, ops.b_matrix(lambda, mu),
      Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
  {
    throw NumericalError("gamma_spectrum: generalized eigensolver failed");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return solver.eigenvalues()[a] > solver.eigenvalues()[b]; });

  // Break near-ties (1e-12 relative) by ascending oscillation count so the
  // index n stays stable across lambda.
  const Eigen::MatrixXd &v0 = ops.basis->values(0);
  for (int i = 0; i + 1 < m;)
  {
    int j = i + 1;
    const double gi = solver.eigenvalues()[order[i]];
    while (j < m &&
           std::abs(solver.eigenvalues()[order[j]] - gi) <= 1e-12 * std::abs(gi))
    {
      ++j;
    }
    if (j - i > 1)
    {
      std::sort(order.begin() + i, order.begin() + j, [&](int a, int b) {
        return sign_change_count(v0.transpose() * solver.eigenvectors().col(a)) <
               sign_change_count(v0.transpose() * solver.eigenvectors().col(b));
      });
    }
    i = j;
  }

  SpectrumSlice slice;
  slice.k = ops.k;
  slice.lambda = lambda;
  slice.mu = mu;
  slice.gammas.resize(m);
  slice.eigenvectors.resize(n, m);

  const Eigen::MatrixXd mass =
      v0 * ops.basis->quad_weights.asDiagonal() * v0.transpose();
  for (int i = 0; i < m; ++i)
  {
    const double gamma = solver.eigenvalues()[order[i]];
    if (!(gamma > 0.0))
    {
      throw NumericalError("gamma_spectrum: nonpositive gamma in the coercive regime");
    }
    slice.gammas[i] = gamma;
    Eigen::VectorXd phi = solver.eigenvectors().col(order[i]);
    phi /= std::sqrt(phi.dot(mass * phi));
    const double d_minus = ops.t_minus.dot(phi);
    double lead = d_minus;
    if (std::abs(d_minus) <= 1e-12)
    {
      lead = evaluate_expansion(*ops.basis, phi, Eigen::VectorXd::Zero(1), 0)[0];
    }
    if (lead < 0.0)
    {
      phi = -phi;
    }
    slice.eigenvectors.col(i) = phi;
  }
  return slice;
}

GammaMonotonicityReport gamma_monotonicity_check(const AssembledOperators &ops, double mu,
                                                 const std::vector<double> &lambda_grid,
                                                 int m)
{
  if (lambda_grid.empty())
  {
    throw std::invalid_argument("gamma_monotonicity_check: empty lambda grid");
  }
  for (std::size_t i = 0; i < lambda_grid.size(); ++i)
  {
    if (lambda_grid[i] < 0.0 || (i > 0 && lambda_grid[i] <= lambda_grid[i - 1]))
    {
      throw std::invalid_argument("gamma_monotonicity_check: grid must be increasing, >= 0");
    }
  }

  GammaMonotonicityReport report;
  report.lambda_grid = lambda_grid;
  report.gammas.resize(m, static_cast<int>(lambda_grid.size()));
  for (std::size_t i = 0; i < lambda_grid.size(); ++i)
  {
    report.gammas.col(static_cast<int>(i)) =
        gamma_spectrum(ops, lambda_grid[i], mu, m).gammas;
  }
  report.all_strictly_decreasing = true;
  for (int n = 0; n < m; ++n)
  {
    for (int i = 0; i + 1 < static_cast<int>(lambda_grid.size()); ++i)
    {
      if (!(report.gammas(n, i) > report.gammas(n, i + 1)))
      {
        report.all_strictly_decreasing = false;
        report.violations.emplace_back(n + 1, i);
      }
    }
  }
  return report;
}

}  // namespace rtslip
