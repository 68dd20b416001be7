// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_BASIS_HPP
#define RTSLIP_BASIS_HPP

#include <array>
#include <functional>

#include <Eigen/Dense>

namespace rtslip
{

/// Gauss-Legendre rule on (-1,1); exact for polynomials of degree <= 2n-1.
struct QuadratureRule
{
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

QuadratureRule gauss_legendre(int n);

/// Polynomial trial space on (-1,1) with the essential conditions built in:
/// psi_j = T_{j+2} - T_j (Chebyshev differences), so psi_j(+-1) = 0 exactly
/// and deg psi_j = j+2. Derivatives are computed through exact Chebyshev
/// coefficient recurrences, never by numerical differentiation.
///
/// Immutable after construction; all evaluations are pure.
struct SpectralBasis
{
  int n_modes = 0;

  // Gauss-Legendre rule with 2*n_modes+2 nodes (see build_basis).
  Eigen::VectorXd quad_nodes;
  Eigen::VectorXd quad_weights;

  // deriv_values[m](j, q) = psi_j^{(m)}(quad_nodes[q]), m = 0..4.
  std::array<Eigen::MatrixXd, 5> deriv_values;

  // Endpoint traces: psi_j'(-1), psi_j'(+1), psi_j''(-1), psi_j''(+1).
  Eigen::VectorXd trace_d1_minus;
  Eigen::VectorXd trace_d1_plus;
  Eigen::VectorXd trace_d2_minus;
  Eigen::VectorXd trace_d2_plus;

  const Eigen::MatrixXd &values(int order) const { return deriv_values.at(order); }
};

/// Requires n_modes >= 4.
SpectralBasis build_basis(int n_modes);

/// Pointwise values of sum_j coeffs[j] psi_j^{(order)} at the given points.
/// Requires |coeffs| = n_modes, order <= 4, points within [-1,1].
Eigen::VectorXd evaluate_expansion(const SpectralBasis &basis, const Eigen::VectorXd &coeffs,
                                   const Eigen::VectorXd &points, int order);

/// L2 mass matrix G_ij = int psi_i psi_j.
Eigen::MatrixXd mass_matrix(const SpectralBasis &basis);

/// L2 projection of f onto the trial space (exact when f is a polynomial of
/// degree <= n_modes+1 vanishing at the endpoints).
Eigen::VectorXd project_function(const SpectralBasis &basis,
                                 const std::function<double(double)> &f);

}  // namespace rtslip

#endif  // RTSLIP_BASIS_HPP
