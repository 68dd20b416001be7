// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_CRITICAL_HPP
#define RTSLIP_CRITICAL_HPP

#include <Eigen/Dense>

#include "rtslip/basis.hpp"
#include "rtslip/forms.hpp"

namespace rtslip
{

enum class CriticalMethod
{
  closed_form,
  numeric,
  asymptotic
};

struct CriticalViscosityResult
{
  double value = 0.0;
  // Maximizer of the boundary/interior quotient, scaled so that
  // xi_-|phi'(-1)|^2 + xi_+|phi'(1)|^2 = 1; empty when the slip vanishes.
  Eigen::VectorXd maximizer_coeffs;
  CriticalMethod method = CriticalMethod::numeric;
};

/// Closed-form critical viscosity mu_c(k, Xi) for k > 0. The hyperbolic
/// ratios are evaluated with the common e^{4k} factor cancelled analytically
/// once k > 20, so large wave numbers neither overflow nor lose the leading
/// digits. mu_c(-k) = mu_c(k); negative k is rejected rather than folded.
double mu_c_closed_form(double k, const SlipCoefficients &slip);

/// Discrete critical viscosity: largest generalized eigenvalue of the rank-2
/// boundary form against the k-dependent stiffness, computed through the
/// 2x2 reduction (solve K z = t_-, t_+ once each). Converges to the closed
/// form from below as n_modes grows.
CriticalViscosityResult mu_c_numeric(const SpectralBasis &basis, double k,
                                     const SlipCoefficients &slip);

/// sup_{k>0} mu_c(k,Xi) = lim_{k->0+} mu_c(k,Xi)
///   = (xi_+ + xi_- + sqrt(xi_+^2 - xi_+ xi_- + xi_-^2)) / 3.
double mu_c_sup(const SlipCoefficients &slip);

/// Lattice supremum sup_{k in L^{-1}Z \ {0}} mu_c(k,Xi); by monotonicity in
/// |k| this equals mu_c(1/L, Xi). Distinct from mu_c_sup, which takes the
/// supremum over all real k and is approached only as k -> 0.
double mu_c_lattice(double L, const SlipCoefficients &slip);

/// Two-term small-k expansion mu_c_sup - c2 k^2 with
///   c2 = (2/45) (4(xi_+ + xi_-) + (4xi_+^2 - xi_+ xi_- + 4xi_-^2)
///                                  / sqrt(xi_+^2 - xi_+ xi_- + xi_-^2)).
/// Error O(k^3). Returns 0 when both slip coefficients vanish.
double mu_c_small_k(double k, const SlipCoefficients &slip);

/// High-wave-number bound sqrt(2 (xi_+^2 + xi_-^2)) / k >= mu_c(k, Xi).
double mu_c_high_k_bound(double k, const SlipCoefficients &slip);

/// Quotient maximizer in closed form: phi(x) = (Ax+B) sinh(kx) + (Cx+D) cosh(kx),
/// normalized to xi_-|phi'(-1)|^2 + xi_+|phi'(1)|^2 = 1, sign fixed so that
/// phi'(1) >= 0 (phi'(-1) >= 0 when xi_+ = 0).
struct ExtremalFunction
{
  double k = 0.0;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
};

/// Requires k > 0 and xi_+ + xi_- > 0.
ExtremalFunction extremal_closed_form(double k, const SlipCoefficients &slip);

/// k = 0 maximizer of the pure-bending quotient: a cubic (x^2-1)(ax+b),
/// normalized and sign-fixed the same way. Attains mu_c_sup.
struct ZeroKExtremal
{
  double a = 0.0, b = 0.0;  // phi = (x^2-1)(a x + b)
  double value(double x) const { return (x * x - 1.0) * (a * x + b); }
  double d1(double x) const { return 3.0 * a * x * x + 2.0 * b * x - a; }
  double d2(double x) const { return 6.0 * a * x + 2.0 * b; }
};

ZeroKExtremal extremal_zero_k(const SlipCoefficients &slip);

/// (xi_-|phi'(-1)|^2 + xi_+|phi'(1)|^2) / int(|phi''|^2 + 2k^2|phi'|^2 + k^4|phi|^2);
/// with k = 0 the denominator is int |phi''|^2 alone. Rejects the zero trial.
double rayleigh_quotient(const SpectralBasis &basis, double k, const SlipCoefficients &slip,
                         const Eigen::VectorXd &trial_coeffs);

}  // namespace rtslip

#endif  // RTSLIP_CRITICAL_HPP
