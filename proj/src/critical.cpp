// SPDX-License-Identifier: Apache-2.0

#include "rtslip/critical.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rtslip/errors.hpp"

namespace rtslip
{

namespace
{

void require_positive_k(double k, const char *where)
{
  if (!(k > 0.0))
  {
    throw std::invalid_argument(std::string(where) +
                                ": k must be positive (mu_c(-k) = mu_c(k))");
  }
}

void require_nonnegative_slip(const SlipCoefficients &slip, const char *where)
{
  if (slip.xi_minus < 0.0 || slip.xi_plus < 0.0)
  {
    throw std::invalid_argument(std::string(where) + ": slip coefficients must be >= 0");
  }
}

}  // namespace

double mu_c_closed_form(double k, const SlipCoefficients &slip)
{
  require_positive_k(k, "mu_c_closed_form");
  require_nonnegative_slip(slip, "mu_c_closed_form");
  const double sum = slip.xi_plus + slip.xi_minus;
  const double dif = slip.xi_plus - slip.xi_minus;
  if (sum == 0.0)
  {
    return 0.0;
  }
  if (k <= 20.0)
  {
    const double s2 = std::sinh(2.0 * k);
    const double c2 = std::cosh(2.0 * k);
    const double p1 = s2 * c2 - 2.0 * k;
    const double p2 = s2 - 2.0 * k * c2;
    const double p3 = s2 * s2 * (s2 * s2 - 4.0 * k * k);
    return (p1 * sum + std::sqrt(p2 * p2 * sum * sum + p3 * dif * dif)) /
           (4.0 * k * s2 * s2);
  }
  // Exponentially scaled form: every hyperbolic ratio is written with the
  // common e^{4k} cancelled, r = e^{-4k}. Identical value, no overflow.
  const double r = std::exp(-4.0 * k);
  const double p1 = ((1.0 - r) * (1.0 + r) - 8.0 * k * r) / 4.0;
  const double q2 = ((1.0 - r) - 2.0 * k * (1.0 + r)) / 2.0;
  const double one_m_r2 = (1.0 - r) * (1.0 - r);
  const double p3 = one_m_r2 * (one_m_r2 - 16.0 * k * k * r) / 16.0;
  return (p1 * sum + std::sqrt(r * q2 * q2 * sum * sum + p3 * dif * dif)) /
         (k * one_m_r2);
}

double mu_c_sup(const SlipCoefficients &slip)
{
  require_nonnegative_slip(slip, "mu_c_sup");
  const double xp = slip.xi_plus, xm = slip.xi_minus;
  return (xp + xm + std::sqrt(xp * xp - xp * xm + xm * xm)) / 3.0;
}

double mu_c_lattice(double L, const SlipCoefficients &slip)
{
  if (!(L > 0.0))
  {
    throw std::invalid_argument("mu_c_lattice: L must be positive");
  }
  if (slip.xi_plus + slip.xi_minus == 0.0)
  {
    return 0.0;
  }
  // mu_c(k, Xi) decreases in |k|, so the lattice supremum sits at k = 1/L.
  return mu_c_closed_form(1.0 / L, slip);
}

double mu_c_small_k(double k, const SlipCoefficients &slip)
{
  require_positive_k(k, "mu_c_small_k");
  require_nonnegative_slip(slip, "mu_c_small_k");
  const double xp = slip.xi_plus, xm = slip.xi_minus;
  if (xp + xm == 0.0)
  {
    return 0.0;
  }
  const double root = std::sqrt(xp * xp - xp * xm + xm * xm);
  const double c2 = (2.0 / 45.0) * (4.0 * (xp + xm) + (4.0 * xp * xp - xp * xm + 4.0 * xm * xm) / root);
  return mu_c_sup(slip) - c2 * k * k;
}

double mu_c_high_k_bound(double k, const SlipCoefficients &slip)
{
  require_positive_k(k, "mu_c_high_k_bound");
  require_nonnegative_slip(slip, "mu_c_high_k_bound");
  const double xp = slip.xi_plus, xm = slip.xi_minus;
  return std::sqrt(2.0 * (xp * xp + xm * xm)) / k;
}

CriticalViscosityResult mu_c_numeric(const SpectralBasis &basis, double k,
                                     const SlipCoefficients &slip)
{
  require_positive_k(k, "mu_c_numeric");
  require_nonnegative_slip(slip, "mu_c_numeric");

  CriticalViscosityResult result;
  result.method = CriticalMethod::numeric;
  if (slip.xi_minus == 0.0 && slip.xi_plus == 0.0)
  {
    result.value = 0.0;
    return result;
  }

  const Eigen::MatrixXd K = viscous_stiffness(basis, k);
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
  {
    throw NumericalError("mu_c_numeric: stiffness factorization failed");
  }
  const Eigen::VectorXd z_minus = llt.solve(basis.trace_d1_minus);
  const Eigen::VectorXd z_plus = llt.solve(basis.trace_d1_plus);

  const double sm = std::sqrt(slip.xi_minus);
  const double sp = std::sqrt(slip.xi_plus);
  Eigen::Matrix2d G;
  G(0, 0) = slip.xi_minus * basis.trace_d1_minus.dot(z_minus);
  G(0, 1) = sm * sp * basis.trace_d1_minus.dot(z_plus);
  G(1, 0) = sm * sp * basis.trace_d1_plus.dot(z_minus);
  G(1, 1) = slip.xi_plus * basis.trace_d1_plus.dot(z_plus);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (G + G.transpose()));
  const int top = 1;  // eigenvalues ascending
  result.value = es.eigenvalues()[top];

  const Eigen::Vector2d v = es.eigenvectors().col(top);
  Eigen::VectorXd phi = sm * v[0] * z_minus + sp * v[1] * z_plus;

  // Rescale to the boundary constraint xi_-|phi'(-1)|^2 + xi_+|phi'(1)|^2 = 1
  // and fix the sign deterministically.
  const double dm = basis.trace_d1_minus.dot(phi);
  const double dp = basis.trace_d1_plus.dot(phi);
  const double constraint = slip.xi_minus * dm * dm + slip.xi_plus * dp * dp;
  if (constraint > 0.0)
  {
    phi /= std::sqrt(constraint);
  }
  const double lead = (slip.xi_plus > 0.0) ? basis.trace_d1_plus.dot(phi)
                                           : basis.trace_d1_minus.dot(phi);
  if (lead < 0.0)
  {
    phi = -phi;
  }
  result.maximizer_coeffs = phi;
  return result;
}

double ExtremalFunction::value(double x) const
{
  return (A * x + B) * std::sinh(k * x) + (C * x + D) * std::cosh(k * x);
}

double ExtremalFunction::d1(double x) const
{
  return A * std::sinh(k * x) + k * (A * x + B) * std::cosh(k * x) +
         C * std::cosh(k * x) + k * (C * x + D) * std::sinh(k * x);
}

double ExtremalFunction::d2(double x) const
{
  return 2.0 * k * A * std::cosh(k * x) + k * k * (A * x + B) * std::sinh(k * x) +
         2.0 * k * C * std::sinh(k * x) + k * k * (C * x + D) * std::cosh(k * x);
}

ExtremalFunction extremal_closed_form(double k, const SlipCoefficients &slip)
{
  require_positive_k(k, "extremal_closed_form");
  require_nonnegative_slip(slip, "extremal_closed_form");
  const double xm = slip.xi_minus, xp = slip.xi_plus;
  if (xm == 0.0 && xp == 0.0)
  {
    throw std::invalid_argument("extremal_closed_form: no extremal for vanishing slip");
  }

  const double t = std::tanh(k);
  ExtremalFunction f;
  f.k = k;

  if (xm == 0.0 || xp == 0.0)
  {
    // One-sided: (A,B,C,D) = B0 (-tanh^2 k, 1, -tanh k, tanh^3 k) up to the
    // x -> -x reflection that swaps the active wall.
    const double xi = (xp > 0.0) ? xp : xm;
    const double scale =
        1.0 / (std::sqrt(xi) * std::cosh(k) *
               (k * (t * t - 1.0) * (t * t - 1.0) - t * (t * t + 1.0)));
    f.A = -scale * t * t;
    f.B = scale;
    f.C = -scale * t;
    f.D = scale * t * t * t;
    if (xp == 0.0)
    {
      f.B = -f.B;
      f.C = -f.C;
    }
  }
  else
  {
    const double s2 = std::sinh(2.0 * k);
    const double c2 = std::cosh(2.0 * k);
    const double s4 = std::sinh(4.0 * k);
    const double beta = 1.0 / mu_c_closed_form(k, slip);
    // The smaller slip coefficient keeps the shared denominator positive.
    const double xi = std::min(xp, xm);
    const double den = 2.0 * k * (c2 - 1.0) - beta * xi * (s2 - 2.0 * k);
    const double ratio = (2.0 * k * (1.0 + c2) - beta * xi * (2.0 * k + s2)) / den;
    const double bx = beta * xi;
    const double poly = (s4 - 4.0 * k) * (s2 * s2 - 4.0 * k * k) * bx * bx -
                        8.0 * k * s2 * s2 * (s2 * s2 - 4.0 * k * k) * bx +
                        4.0 * k * k * s2 * s2 * (s4 - 4.0 * k);
    const double amp = std::sqrt(beta) * std::cosh(k) * den / std::sqrt(k * poly);
    if (xp <= xm)
    {
      // phi = A (x + a) sinh(kx) - A (a x + 1) tanh k cosh(kx)
      f.A = amp;
      f.B = amp * ratio;
      f.C = -amp * ratio * t;
      f.D = -amp * t;
    }
    else
    {
      // phi = A (x - b) sinh(kx) + A (b x - 1) tanh k cosh(kx)
      f.A = amp;
      f.B = -amp * ratio;
      f.C = amp * ratio * t;
      f.D = -amp * t;
    }
  }

  const double lead = (xp > 0.0) ? f.d1(1.0) : f.d1(-1.0);
  if (lead < 0.0)
  {
    f.A = -f.A;
    f.B = -f.B;
    f.C = -f.C;
    f.D = -f.D;
  }
  return f;
}

ZeroKExtremal extremal_zero_k(const SlipCoefficients &slip)
{
  require_nonnegative_slip(slip, "extremal_zero_k");
  const double xm = slip.xi_minus, xp = slip.xi_plus;
  if (xm == 0.0 && xp == 0.0)
  {
    throw std::invalid_argument("extremal_zero_k: no extremal for vanishing slip");
  }
  ZeroKExtremal f;
  if (xm == 0.0)
  {
    const double s = 1.0 / (8.0 * std::sqrt(xp));
    f.a = s;
    f.b = 3.0 * s;
  }
  else if (xp == 0.0)
  {
    const double s = 1.0 / (8.0 * std::sqrt(xm));
    f.a = s;
    f.b = -3.0 * s;
  }
  else
  {
    const double beta = 1.0 / mu_c_sup(slip);
    const double bx = beta * xm;
    const double B = std::sqrt(beta) * (3.0 - bx) /
                     (4.0 * std::sqrt(2.0) * std::sqrt(bx * bx - 3.0 * bx + 3.0));
    const double A = B * (1.0 - bx) / (3.0 - bx);
    f.a = A;
    f.b = B;
  }
  const double lead = (xp > 0.0) ? f.d1(1.0) : f.d1(-1.0);
  if (lead < 0.0)
  {
    f.a = -f.a;
    f.b = -f.b;
  }
  return f;
}

double rayleigh_quotient(const SpectralBasis &basis, double k, const SlipCoefficients &slip,
                         const Eigen::VectorXd &trial_coeffs)
{
  if (k < 0.0)
  {
    throw std::invalid_argument("rayleigh_quotient: k must be >= 0");
  }
  require_nonnegative_slip(slip, "rayleigh_quotient");
  if (trial_coeffs.size() != basis.n_modes)
  {
    throw std::invalid_argument("rayleigh_quotient: coefficient size mismatch");
  }
  if (trial_coeffs.isZero(0.0))
  {
    throw std::invalid_argument("rayleigh_quotient: zero trial function");
  }
  const double dm = basis.trace_d1_minus.dot(trial_coeffs);
  const double dp = basis.trace_d1_plus.dot(trial_coeffs);
  const double numerator = slip.xi_minus * dm * dm + slip.xi_plus * dp * dp;

  const Eigen::VectorXd d2 = basis.values(2).transpose() * trial_coeffs;
  double denominator = basis.quad_weights.dot(d2.cwiseAbs2());
  if (k > 0.0)
  {
    const Eigen::VectorXd d1 = basis.values(1).transpose() * trial_coeffs;
    const Eigen::VectorXd d0 = basis.values(0).transpose() * trial_coeffs;
    denominator += 2.0 * k * k * basis.quad_weights.dot(d1.cwiseAbs2()) +
                   std::pow(k, 4) * basis.quad_weights.dot(d0.cwiseAbs2());
  }
  return numerator / denominator;
}

}  // namespace rtslip
