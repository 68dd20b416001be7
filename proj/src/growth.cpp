// SPDX-License-Identifier: Apache-2.0

#include "rtslip/growth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rtslip/critical.hpp"
#include "rtslip/errors.hpp"

namespace rtslip
{

namespace
{

Eigen::VectorXd expansion_at_nodes(const AssembledOperators &ops,
                                   const Eigen::VectorXd &coeffs, int order)
{
  return ops.basis->values(order).transpose() * coeffs;
}

}  // namespace

GrowthMode solve_growth_rate(const AssembledOperators &ops, double g, double mu, int n,
                             double tol)
{
  if (n < 1)
  {
    throw std::invalid_argument("solve_growth_rate: mode index must be >= 1");
  }
  if (!(tol > 0.0))
  {
    throw std::invalid_argument("solve_growth_rate: tol must be positive");
  }
  const double k = ops.k;
  const double gk2 = g * k * k;

  // f(lambda) = g k^2 gamma_n(lambda) - lambda is strictly decreasing with
  // f(0+) > 0; the root sits below sqrt(g/L0) so the first bracket almost
  // always closes immediately.
  const auto f = [&](double lambda) {
    return gk2 * gamma_spectrum(ops, lambda, mu, n).gammas[n - 1] - lambda;
  };

  double hi = lambda_upper_bound(*ops.profile, g);
  int doublings = 0;
  while (f(hi) > 0.0)
  {
    hi *= 2.0;
    if (++doublings > 10)
    {
      throw NoRootError("solve_growth_rate: no sign change after 10 doublings; "
                        "discretization inconsistent with the guaranteed root");
    }
  }
  double lo = 0.0;
  double mid = 0.5 * hi;
  // The exit bracket satisfies the stated tol * max(1, lambda); on top of
  // that it is tightened to ~1e-12 relative so the fixed-point and energy
  // defects stay at identity tolerance even for the deep modes with
  // lambda_n << 1.
  int steps = 0;
  while ((hi - lo > tol * std::max(1.0, mid) || hi - lo > 1e-12 * mid) && steps < 200)
  {
    mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
    ++steps;
  }
  const double lambda_n = 0.5 * (lo + hi);

  const SpectrumSlice slice = gamma_spectrum(ops, lambda_n, mu, n);
  GrowthMode mode;
  mode.n = n;
  mode.lambda_n = lambda_n;
  mode.phi_coeffs = slice.eigenvectors.col(n - 1);
  mode.k = k;
  mode.g = g;
  mode.mu = mu;
  mode.slip = ops.slip;

  const Eigen::VectorXd phi0 = expansion_at_nodes(ops, mode.phi_coeffs, 0);
  const Eigen::VectorXd phi1 = expansion_at_nodes(ops, mode.phi_coeffs, 1);
  const Eigen::VectorXd phi3 = expansion_at_nodes(ops, mode.phi_coeffs, 3);
  const int nq = static_cast<int>(phi0.size());
  mode.omega.resize(nq);
  mode.theta.resize(nq);
  mode.q.resize(nq);
  for (int q = 0; q < nq; ++q)
  {
    const double x = ops.basis->quad_nodes[q];
    mode.omega[q] = -ops.profile->rho_prime(x) * phi0[q] / lambda_n;
    mode.theta[q] = -phi1[q] / k;
    mode.q[q] = -(lambda_n * ops.profile->rho(x) * phi1[q] +
                  mu * (k * k * phi1[q] - phi3[q])) /
                (k * k);
  }

  const double target = lambda_n / gk2;
  mode.fixed_point_residual = std::abs(slice.gammas[n - 1] - target) / target;
  mode.continuity_residual = (k * mode.theta + phi1).cwiseAbs().maxCoeff();

  const StrongFormResidual sf =
      strong_form_residual(mode, *ops.profile, *ops.basis, g, k, mu, ops.basis->quad_nodes);
  mode.ode_residual = sf.interior;
  mode.bc_residual = sf.boundary;
  return mode;
}

std::vector<GrowthMode> growth_sequence(const AssembledOperators &ops, double g, double mu,
                                        int n_max, double tol)
{
  std::vector<GrowthMode> modes;
  modes.reserve(n_max);
  for (int n = 1; n <= n_max; ++n)
  {
    modes.push_back(solve_growth_rate(ops, g, mu, n, tol));
    if (n > 1 && !(modes[n - 1].lambda_n < modes[n - 2].lambda_n))
    {
      std::ostringstream msg;
      msg << "growth_sequence: lambda_" << n << " >= lambda_" << n - 1
          << "; the sequence must decrease strictly";
      throw NumericalError(msg.str());
    }
  }
  return modes;
}

double ModeShape::phi(double x2, int order) const
{
  Eigen::VectorXd pt(1);
  pt[0] = x2;
  return evaluate_expansion(*basis, phi_coeffs, pt, order)[0];
}

double ModeShape::omega(double x2) const
{
  return -profile->rho_prime(x2) * phi(x2) / lambda;
}

double ModeShape::theta(double x2) const
{
  return -phi(x2, 1) / k;
}

double ModeShape::q_amp(double x2) const
{
  return -(lambda * profile->rho(x2) * phi(x2, 1) + mu * (k * k * phi(x2, 1) - phi(x2, 3))) /
         (k * k);
}

ModeShape::FieldSample ModeShape::sample(double t, double x1, double x2) const
{
  const double grow = std::exp(lambda * t);
  FieldSample s;
  s.sigma = grow * std::cos(k * x1) * omega(x2);
  s.u1 = grow * std::sin(k * x1) * theta(x2);
  s.u2 = grow * std::cos(k * x1) * phi(x2);
  s.p = grow * std::cos(k * x1) * q_amp(x2);
  return s;
}

ModeShape assemble_mode(const GrowthMode &mode, const DensityProfile &profile,
                        const SpectralBasis &basis, double g, double k, double mu)
{
  if (!(mode.lambda_n > 0.0))
  {
    throw std::invalid_argument("assemble_mode: mode must carry a positive growth rate");
  }
  ModeShape shape;
  shape.basis = &basis;
  shape.profile = &profile;
  shape.k = k;
  shape.lambda = mode.lambda_n;
  shape.mu = mu;
  shape.g = g;
  shape.phi_coeffs = mode.phi_coeffs;
  return shape;
}

double verify_characteristic_identity(const GrowthMode &mode, const AssembledOperators &ops,
                                      double g, double mu)
{
  const double lhs = mode.lambda_n *
                     bilinear_value(ops, mode.lambda_n, mu, mode.phi_coeffs, mode.phi_coeffs);
  const double rhs =
      g * ops.k * ops.k * mode.phi_coeffs.dot(ops.M_rho_prime * mode.phi_coeffs);
  return std::abs(lhs - rhs) / rhs;
}

StrongFormResidual strong_form_residual(const GrowthMode &mode, const DensityProfile &profile,
                                        const SpectralBasis &basis, double g, double k,
                                        double mu, const Eigen::VectorXd &sample_points)
{
  if (mode.phi_coeffs.size() == 0 || mode.phi_coeffs.isZero(0.0))
  {
    throw std::invalid_argument("strong_form_residual: zero mode rejected");
  }
  if (sample_points.size() == 0)
  {
    throw std::invalid_argument("strong_form_residual: no sample points");
  }
  const double lambda = mode.lambda_n;

  std::array<Eigen::VectorXd, 5> d;
  for (int order = 0; order <= 4; ++order)
  {
    d[order] = evaluate_expansion(basis, mode.phi_coeffs, sample_points, order);
  }

  const int np = static_cast<int>(sample_points.size());
  double r2 = 0.0, visc2 = 0.0, grav2 = 0.0, inert2 = 0.0;
  for (int i = 0; i < np; ++i)
  {
    const double x = sample_points[i];
    const double rho = profile.rho(x);
    const double rho_p = profile.rho_prime(x);
    const double visc = lambda * mu * (d[4][i] - 2.0 * k * k * d[2][i] + std::pow(k, 4) * d[0][i]);
    const double grav = g * k * k * rho_p * d[0][i];
    // (rho0 phi')' expanded as rho0' phi' + rho0 phi''.
    const double inert = lambda * lambda * (k * k * rho * d[0][i] - rho_p * d[1][i] - rho * d[2][i]);
    const double r = visc - grav + inert;
    r2 += r * r;
    visc2 += visc * visc;
    grav2 += grav * grav;
    inert2 += inert * inert;
  }
  const double scale = std::sqrt(std::max({visc2, grav2, inert2}));

  StrongFormResidual out;
  out.interior = std::sqrt(r2) / scale;

  Eigen::VectorXd ends(2);
  ends << -1.0, 1.0;
  const Eigen::VectorXd d1e = evaluate_expansion(basis, mode.phi_coeffs, ends, 1);
  const Eigen::VectorXd d2e = evaluate_expansion(basis, mode.phi_coeffs, ends, 2);
  const double defect_plus = std::abs(mu * d2e[1] - mode.slip.xi_plus * d1e[1]);
  const double defect_minus = std::abs(mu * d2e[0] + mode.slip.xi_minus * d1e[0]);
  const double d2_scale = mu * d[2].cwiseAbs().maxCoeff();
  out.boundary = std::max(defect_plus, defect_minus) / d2_scale;
  return out;
}

}  // namespace rtslip
