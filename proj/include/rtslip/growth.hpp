// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_GROWTH_HPP
#define RTSLIP_GROWTH_HPP

#include <vector>

#include <Eigen/Dense>

#include "rtslip/forms.hpp"
#include "rtslip/spectrum.hpp"

namespace rtslip
{

/// One solved normal mode: the n-th characteristic value lambda_n with its
/// vertical-velocity amplitude phi_n and the derived amplitudes
///   omega = -rho0' phi / lambda,  theta = -phi'/k,
///   q = -(lambda rho0 phi' + mu (k^2 phi' - phi'''))/k^2,
/// sampled on the quadrature grid. Residuals are filled by post-solve
/// evaluation, never assumed.
struct GrowthMode
{
  int n = 0;
  double lambda_n = 0.0;
  Eigen::VectorXd phi_coeffs;  // ||phi||_L2 = 1, sign phi'(-1) >= 0

  double k = 0.0;
  double g = 0.0;
  double mu = 0.0;
  SlipCoefficients slip;

  Eigen::VectorXd omega;  // at quad nodes
  Eigen::VectorXd theta;
  Eigen::VectorXd q;

  double fixed_point_residual = 0.0;  // |gamma_n(lambda_n) - lambda_n/(g k^2)| relative
  double ode_residual = 0.0;          // L2-normalized strong-form defect
  double bc_residual = 0.0;           // max Navier-slip trace defect, relative
  double continuity_residual = 0.0;   // max |k theta + phi'| on the grid
};

/// Solves  g k^2 gamma_n(k, lambda, mu) = lambda  by bisection. The left end
/// is lambda = 0 where the residual is positive; the right end starts at
/// sqrt(g/L0) and doubles at most 10 times. Monotonicity of gamma_n in
/// lambda makes the root unique.
GrowthMode solve_growth_rate(const AssembledOperators &ops, double g, double mu, int n,
                             double tol);

/// Modes n = 1..n_max; enforces the strict decrease of the lambda sequence.
std::vector<GrowthMode> growth_sequence(const AssembledOperators &ops, double g, double mu,
                                        int n_max, double tol);

/// Full linearized solution built from a solved mode: 1D amplitude evaluators
/// plus the 2D normal-mode sampler
///   (sigma, u1, u2, p) = e^{lambda t} (cos(kx1) omega, sin(kx1) theta,
///                                      cos(kx1) phi,   cos(kx1) q).
struct ModeShape
{
  const SpectralBasis *basis = nullptr;
  const DensityProfile *profile = nullptr;
  double k = 0.0, lambda = 0.0, mu = 0.0, g = 0.0;
  Eigen::VectorXd phi_coeffs;

  double phi(double x2, int order = 0) const;
  double omega(double x2) const;
  double theta(double x2) const;
  double q_amp(double x2) const;

  struct FieldSample
  {
    double sigma, u1, u2, p;
  };
  FieldSample sample(double t, double x1, double x2) const;
};

ModeShape assemble_mode(const GrowthMode &mode, const DensityProfile &profile,
                        const SpectralBasis &basis, double g, double k, double mu);

/// Relative defect of the energy identity
///   lambda B_{k,lambda,mu}(phi,phi) = g k^2 int rho0' phi^2
/// evaluated at lambda = lambda_n.
double verify_characteristic_identity(const GrowthMode &mode, const AssembledOperators &ops,
                                      double g, double mu);

struct StrongFormResidual
{
  double interior = 0.0;  // ||r||_L2 / scale of the equation terms
  double boundary = 0.0;  // max trace defect relative to ||mu phi''||_inf
  double total() const { return interior + boundary; }
};

/// Pointwise residual of the fourth-order equation at the sample points plus
/// the Navier-slip trace defects. (rho0 phi')' is expanded as
/// rho0' phi' + rho0 phi''; no second derivative of rho0 is ever required.
StrongFormResidual strong_form_residual(const GrowthMode &mode, const DensityProfile &profile,
                                        const SpectralBasis &basis, double g, double k,
                                        double mu, const Eigen::VectorXd &sample_points);

}  // namespace rtslip

#endif  // RTSLIP_GROWTH_HPP
