// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_DISPERSION_HPP
#define RTSLIP_DISPERSION_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rtslip/growth.hpp"

namespace rtslip
{

/// Wave-number selection: the lattice k = j/L, j = 1..j_max, or an explicit grid.
struct KSelection
{
  static KSelection lattice(double L, int j_max);
  static KSelection grid(std::vector<double> ks);

  std::vector<double> values;
  bool is_lattice = false;
  double L = 1.0;
  int j_max = 0;
};

struct DispersionColumn
{
  double k = 0.0;
  double mu_c = 0.0;  // closed form at this k
  bool skipped = false;
  std::vector<GrowthMode> modes;  // first m growth rates, empty when skipped

  std::vector<double> lambdas() const;
};

struct DispersionCurve
{
  std::vector<DispersionColumn> columns;
  double g = 0.0, mu = 0.0, L = 1.0, tol = 0.0;
  int m_modes = 0;
  SlipCoefficients slip;
  const DensityProfile *profile = nullptr;
  const SpectralBasis *basis = nullptr;
};

/// Tabulates the first m_modes growth rates per wave number. Subcritical
/// columns (mu <= mu_c(k, Xi)) are flagged as skipped, not errors. Columns
/// are computed concurrently and merged in fixed k order.
DispersionCurve sweep(const DensityProfile &profile, const SpectralBasis &basis, double g,
                      double mu, const SlipCoefficients &slip, const KSelection &ks,
                      int m_modes, double tol);

/// (Lambda, argmax k): maximum of lambda_1 over the tabulated window. The
/// supremum over the infinite lattice is approximated by the window; callers
/// should confirm saturation by widening j_max.
std::pair<double, double> capital_lambda(const DispersionCurve &curve);

struct NonlinearConstants
{
  double capital_lambda = 0.0;
  double argmax_k = 0.0;
  double mu_c_lattice = 0.0;    // sup over the lattice = mu_c(1/L, Xi)
  double mu_c_sup_all_k = 0.0;  // sup over all real k (k -> 0 limit)
  double varpi0 = 0.0;
  double nu0 = 0.0;  // in (1, 3/2)
  double m1 = 0.0;   // m1 + 1/m1 = 2 nu0
  double m2 = 0.0;
  double k0 = 0.0;   // column carrying the spectral gap, when found
  int n_split = 0;   // N with lambda_N > (2 nu0 / 3) Lambda > lambda_{N+1}
  bool n_split_found = false;
};

/// Requires mu > 3 mu_c(Xi) with the lattice supremum (throws
/// ThresholdViolationError otherwise). varpi0 is fixed to the midpoint
/// (mu/mu_c - 3)/2; when the slip vanishes, mu_c(Xi) = 0, the threshold is
/// trivially met and varpi0 = 1 by convention. m2 is the root of
///   m1^2 m2^2 - 2 (mu (m1^2-m1+1) - mu_c(Xi)(m1^2+1)) m2 + mu^2 = 0
/// with the larger value taken, so that
///   Lambda m1 (mu/m1 + m2)^2 / (2 (mu - mu_c(Xi))) = 2 nu0 Lambda m2
/// holds exactly.
NonlinearConstants nonlinear_constants(const DispersionCurve &curve, double mu,
                                       const SlipCoefficients &slip, double L);

/// Linear combination  delta sum C_j e^{lambda_j t} U_j  of modes at a fixed
/// wave number, with the normalization verdict
///   |C_1| ||u_1|| > 1/2 sum_{j>=2} |C_j| ||u_j|| > 0
/// and the envelope F_M(t) = sum |C_j| e^{lambda_j t}.
struct ModeCombination
{
  std::vector<double> coeffs;
  std::vector<double> lambdas;
  std::vector<double> mode_norms;  // ||u_j||_{L2(Omega)}
  Eigen::MatrixXd velocity_gram;   // <u_i, u_j>_{L2(Omega)}
  bool normalized_ok = false;

  double f_m(double t) const;
  /// ||u^M(t)||^2_{L2(Omega)} for the combination scaled by delta.
  double combination_norm_sq(double delta, double t) const;
};

/// Requires >= 2 modes at the same k and a nonzero tail coefficient.
ModeCombination make_mode_combination(const std::vector<GrowthMode> &modes,
                                      const std::vector<double> &C, const SpectralBasis &basis,
                                      double L);

/// Unique T with delta F_M(T) = eps0 (strictly increasing envelope); returns
/// 0 at the boundary case delta F_M(0) >= eps0. Relative tolerance 1e-12.
double solve_t_delta(const ModeCombination &comb, double delta, double eps0);

/// Divergence-free superposition of assembled normal modes at t = 0,
/// evaluated pointwise for the 2D quadrature checks.
struct VelocityField
{
  struct Component
  {
    double k = 0.0;
    double amplitude = 0.0;
    Eigen::VectorXd phi_coeffs;
  };
  std::vector<Component> components;
  const SpectralBasis *basis = nullptr;

  double w1(double x1, double x2) const;
  double w2(double x1, double x2) const;
  /// |grad w|^2 at a point (all four partial derivatives).
  double grad_norm_sq(double x1, double x2) const;

  static VelocityField from_modes(const std::vector<const GrowthMode *> &modes,
                                  const std::vector<double> &amplitudes,
                                  const SpectralBasis &basis);
};

struct MaximalModeCheck
{
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs, contract >= -1e-10 * |rhs|
};

/// Tensor-quadrature evaluation (trapezoid in x1, Gauss in x2) of
///   int g rho0' w2^2 + Lambda oint (xi_+ w1(.,1)^2 + xi_- w1(.,-1)^2)
///     <= Lambda^2 int rho0 |w|^2 + Lambda mu int |grad w|^2
/// over Omega = 2 pi L T x (-1,1).
MaximalModeCheck maximal_mode_inequality_check(const VelocityField &w,
                                               const DensityProfile &profile, double g,
                                               double mu, const SlipCoefficients &slip,
                                               double capital_lambda, double L);

/// oint (xi_+ w1(.,1)^2 + xi_- w1(.,-1)^2) / ||grad w||^2, bounded by the
/// lattice mu_c(Xi) for lattice-supported fields.
double boundary_dissipation_quotient(const VelocityField &w, const SlipCoefficients &slip,
                                     double L);

}  // namespace rtslip

#endif  // RTSLIP_DISPERSION_HPP
