// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_SPECTRUM_HPP
#define RTSLIP_SPECTRUM_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rtslip/forms.hpp"

namespace rtslip
{

/// Leading eigenpairs of the compact operator slice at fixed (k, lambda, mu):
/// gamma_n solve  gamma Y phi = rho0' phi, discretely the symmetric-definite
/// pencil  B(lambda, mu) phi = (1/gamma) M_rho_prime phi.
struct SpectrumSlice
{
  double k = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  Eigen::VectorXd gammas;        // decreasing, all positive
  Eigen::MatrixXd eigenvectors;  // column n: phi_n coefficients, ||phi_n||_L2 = 1
};

/// Requires coercivity (throws SubcriticalViscosityError otherwise) and
/// m <= n_modes. Eigenvectors are B-orthogonal, L2-normalized, sign fixed by
/// phi'(-1) >= 0 with fallback phi(0) >= 0. Ties in gamma (within 1e-12
/// relative) are ordered by ascending sign-change count on the quadrature grid.
SpectrumSlice gamma_spectrum(const AssembledOperators &ops, double lambda, double mu, int m);

struct GammaMonotonicityReport
{
  std::vector<double> lambda_grid;
  Eigen::MatrixXd gammas;  // (m x grid) table
  bool all_strictly_decreasing = false;
  std::vector<std::pair<int, int>> violations;  // (mode index n, grid interval i)
};

/// Checks gamma_n(lambda_i) > gamma_n(lambda_{i+1}) for n = 1..m over an
/// increasing lambda grid.
GammaMonotonicityReport gamma_monotonicity_check(const AssembledOperators &ops, double mu,
                                                 const std::vector<double> &lambda_grid, int m);

}  // namespace rtslip

#endif  // RTSLIP_SPECTRUM_HPP
