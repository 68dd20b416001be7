// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_FORMS_HPP
#define RTSLIP_FORMS_HPP

#include <Eigen/Dense>

#include "rtslip/basis.hpp"
#include "rtslip/profile.hpp"

namespace rtslip
{

struct SlipCoefficients
{
  double xi_minus = 0.0;
  double xi_plus = 0.0;
};

/// Matrices realizing the energy form
///   B_{k,lam,mu}(u,v) = lam int rho0 (k^2 u v + u' v')
///                     + mu  int (u'' v'' + 2 k^2 u' v' + k^4 u v)
///                     - xi_- u'(-1) v'(-1) - xi_+ u'(+1) v'(+1)
/// on the trial space. The slip conditions are natural: nothing is imposed
/// on the basis, the boundary terms carry them. Boundary contributions are
/// kept as rank-1 factors t_-, t_+ and never densified.
struct AssembledOperators
{
  double k = 0.0;
  Eigen::MatrixXd K_visc;       // int (u'' v'' + 2k^2 u' v' + k^4 u v)
  Eigen::MatrixXd K_dens;       // int rho0 (k^2 u v + u' v')
  Eigen::MatrixXd M_rho_prime;  // int rho0' u v
  Eigen::VectorXd t_minus;      // psi_j'(-1)
  Eigen::VectorXd t_plus;       // psi_j'(+1)
  SlipCoefficients slip;
  const SpectralBasis *basis = nullptr;
  const DensityProfile *profile = nullptr;

  /// Dense B-matrix  lam*K_dens + mu*K_visc - xi_- t_- t_-^T - xi_+ t_+ t_+^T.
  Eigen::MatrixXd b_matrix(double lambda, double mu) const;
};

/// int (u'' v'' + 2k^2 u' v' + k^4 u v) alone; needed where no profile exists.
Eigen::MatrixXd viscous_stiffness(const SpectralBasis &basis, double k);

/// Requires k != 0 (the normal-mode ansatz excludes k = 0).
AssembledOperators assemble(const SpectralBasis &basis, const DensityProfile &profile,
                            double k, const SlipCoefficients &slip);

/// u^T B(lambda, mu) v without forming the rank-2 boundary part densely.
double bilinear_value(const AssembledOperators &ops, double lambda, double mu,
                      const Eigen::VectorXd &u, const Eigen::VectorXd &v);

/// Smallest eigenvalue of the B-matrix. Positive iff the discrete form is
/// coercive; at lambda = 0 this flips sign at the discrete critical
/// viscosity, which under-approximates mu_c(k, Xi).
double coercivity_margin(const AssembledOperators &ops, double lambda, double mu);

}  // namespace rtslip

#endif  // RTSLIP_FORMS_HPP
