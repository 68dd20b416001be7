// SPDX-License-Identifier: Apache-2.0

#include "rtslip/forms.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rtslip
{

namespace
{

Eigen::MatrixXd symmetrized(Eigen::MatrixXd m)
{
  return 0.5 * (m + m.transpose());
}

}  // namespace

Eigen::MatrixXd viscous_stiffness(const SpectralBasis &basis, double k)
{
  const Eigen::VectorXd &w = basis.quad_weights;
  const Eigen::MatrixXd &v0 = basis.values(0);
  const Eigen::MatrixXd &v1 = basis.values(1);
  const Eigen::MatrixXd &v2 = basis.values(2);
  Eigen::MatrixXd m = v2 * w.asDiagonal() * v2.transpose() +
                      2.0 * k * k * (v1 * w.asDiagonal() * v1.transpose()) +
                      std::pow(k, 4) * (v0 * w.asDiagonal() * v0.transpose());
  return symmetrized(std::move(m));
}

Eigen::MatrixXd AssembledOperators::b_matrix(double lambda, double mu) const
{
  Eigen::MatrixXd b = lambda * K_dens + mu * K_visc;
  if (slip.xi_minus != 0.0)
  {
    b.noalias() -= slip.xi_minus * (t_minus * t_minus.transpose());
  }
  if (slip.xi_plus != 0.0)
  {
    b.noalias() -= slip.xi_plus * (t_plus * t_plus.transpose());
  }
  return b;
}

AssembledOperators assemble(const SpectralBasis &basis, const DensityProfile &profile,
                            double k, const SlipCoefficients &slip)
{
  if (k == 0.0)
  {
    throw std::invalid_argument("assemble: k must be nonzero (k in L^{-1}Z \\ {0})");
  }
  if (slip.xi_minus < 0.0 || slip.xi_plus < 0.0)
  {
    throw std::invalid_argument("assemble: slip coefficients must be nonnegative");
  }
  AssembledOperators ops;
  ops.k = k;
  ops.slip = slip;
  ops.basis = &basis;
  ops.profile = &profile;

  const int nq = static_cast<int>(basis.quad_nodes.size());
  Eigen::VectorXd w_rho(nq), w_rho_prime(nq);
  for (int q = 0; q < nq; ++q)
  {
    const double x = basis.quad_nodes[q];
    w_rho[q] = basis.quad_weights[q] * profile.rho(x);
    w_rho_prime[q] = basis.quad_weights[q] * profile.rho_prime(x);
  }

  const Eigen::MatrixXd &v0 = basis.values(0);
  const Eigen::MatrixXd &v1 = basis.values(1);

  ops.K_visc = viscous_stiffness(basis, k);
  ops.K_dens = symmetrized(k * k * (v0 * w_rho.asDiagonal() * v0.transpose()) +
                           v1 * w_rho.asDiagonal() * v1.transpose());
  ops.M_rho_prime = symmetrized(v0 * w_rho_prime.asDiagonal() * v0.transpose());
  ops.t_minus = basis.trace_d1_minus;
  ops.t_plus = basis.trace_d1_plus;
  return ops;
}

double bilinear_value(const AssembledOperators &ops, double lambda, double mu,
                      const Eigen::VectorXd &u, const Eigen::VectorXd &v)
{
  const int n = static_cast<int>(ops.K_visc.rows());
  if (u.size() != n || v.size() != n)
  {
    throw std::invalid_argument("bilinear_value: dimension mismatch");
  }
  double value = lambda * u.dot(ops.K_dens * v) + mu * u.dot(ops.K_visc * v);
  value -= ops.slip.xi_minus * ops.t_minus.dot(u) * ops.t_minus.dot(v);
  value -= ops.slip.xi_plus * ops.t_plus.dot(u) * ops.t_plus.dot(v);
  return value;
}

double coercivity_margin(const AssembledOperators &ops, double lambda, double mu)
{
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ops.b_matrix(lambda, mu),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace rtslip
