// SPDX-License-Identifier: Apache-2.0

#include "rtslip/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "rtslip/critical.hpp"
#include "rtslip/errors.hpp"

namespace rtslip
{

KSelection KSelection::lattice(double L, int j_max)
{
  if (!(L > 0.0) || j_max < 1)
  {
    throw std::invalid_argument("KSelection::lattice: need L > 0 and j_max >= 1");
  }
  KSelection sel;
  sel.is_lattice = true;
  sel.L = L;
  sel.j_max = j_max;
  sel.values.reserve(j_max);
  for (int j = 1; j <= j_max; ++j)
  {
    sel.values.push_back(j / L);
  }
  return sel;
}

KSelection KSelection::grid(std::vector<double> ks)
{
  if (ks.empty())
  {
    throw std::invalid_argument("KSelection::grid: empty wave-number set");
  }
  for (double k : ks)
  {
    if (!(k > 0.0))
    {
      throw std::invalid_argument("KSelection::grid: wave numbers must be positive");
    }
  }
  KSelection sel;
  sel.values = std::move(ks);
  return sel;
}

std::vector<double> DispersionColumn::lambdas() const
{
  std::vector<double> out;
  out.reserve(modes.size());
  for (const auto &m : modes)
  {
    out.push_back(m.lambda_n);
  }
  return out;
}

DispersionCurve sweep(const DensityProfile &profile, const SpectralBasis &basis, double g,
                      double mu, const SlipCoefficients &slip, const KSelection &ks,
                      int m_modes, double tol)
{
  if (ks.values.empty())
  {
    throw std::invalid_argument("sweep: empty wave-number set");
  }
  if (m_modes < 1)
  {
    throw std::invalid_argument("sweep: m_modes must be >= 1");
  }

  DispersionCurve curve;
  curve.g = g;
  curve.mu = mu;
  curve.L = ks.is_lattice ? ks.L : 1.0;
  curve.tol = tol;
  curve.m_modes = m_modes;
  curve.slip = slip;
  curve.profile = &profile;
  curve.basis = &basis;
  curve.columns.resize(ks.values.size());

  // Columns are independent; compute them concurrently and merge by index so
  // the result does not depend on scheduling.
  std::vector<std::future<DispersionColumn>> futures;
  futures.reserve(ks.values.size());
  for (double k : ks.values)
  {
    futures.push_back(std::async(std::launch::async, [&, k]() {
      DispersionColumn col;
      col.k = k;
      col.mu_c = mu_c_closed_form(k, slip);
      if (!(mu > col.mu_c))
      {
        col.skipped = true;
        return col;
      }
      const AssembledOperators ops = assemble(basis, profile, k, slip);
      col.modes = growth_sequence(ops, g, mu, m_modes, tol);
      return col;
    }));
  }
  for (std::size_t i = 0; i < futures.size(); ++i)
  {
    curve.columns[i] = futures[i].get();
  }
  return curve;
}

std::pair<double, double> capital_lambda(const DispersionCurve &curve)
{
  double best = -1.0;
  double best_k = 0.0;
  for (const auto &col : curve.columns)
  {
    if (col.skipped || col.modes.empty())
    {
      continue;
    }
    if (col.modes.front().lambda_n > best)
    {
      best = col.modes.front().lambda_n;
      best_k = col.k;
    }
  }
  if (best < 0.0)
  {
    throw std::invalid_argument("capital_lambda: every column is skipped-subcritical");
  }
  return {best, best_k};
}

NonlinearConstants nonlinear_constants(const DispersionCurve &curve, double mu,
                                       const SlipCoefficients &slip, double L)
{
  NonlinearConstants out;
  out.mu_c_lattice = mu_c_lattice(L, slip);
  out.mu_c_sup_all_k = mu_c_sup(slip);
  if (!(mu > 3.0 * out.mu_c_lattice))
  {
    throw ThresholdViolationError("nonlinear_constants: need mu > 3 mu_c(Xi) with "
                                  "mu_c(Xi) the lattice supremum");
  }

  if (out.mu_c_lattice > 0.0)
  {
    out.varpi0 = 0.5 * (mu / out.mu_c_lattice - 3.0);
  }
  else
  {
    out.varpi0 = 1.0;  // convention for vanishing slip
  }
  out.nu0 = (3.0 + out.varpi0) / (2.0 + out.varpi0);
  out.m1 = out.nu0 + std::sqrt(out.nu0 * out.nu0 - 1.0);

  // Larger root of m1^2 m2^2 - 2 X m2 + mu^2 = 0; makes the Young-inequality
  // balance m1 (mu/m1 + m2)^2 / (2 (mu - mu_c)) = 2 nu0 m2 exact.
  const double m1sq = out.m1 * out.m1;
  const double X = mu * (m1sq - out.m1 + 1.0) - out.mu_c_lattice * (m1sq + 1.0);
  const double disc = std::max(X * X - mu * mu * m1sq, 0.0);
  out.m2 = (X + std::sqrt(disc)) / m1sq;

  const auto [lambda_cap, argmax_k] = capital_lambda(curve);
  out.capital_lambda = lambda_cap;
  out.argmax_k = argmax_k;

  const double threshold = (2.0 * out.nu0 / 3.0) * lambda_cap;
  out.n_split_found = false;
  for (const auto &col : curve.columns)
  {
    if (col.skipped || col.modes.size() < 2)
    {
      continue;
    }
    const auto ls = col.lambdas();
    for (std::size_t n = 0; n + 1 < ls.size(); ++n)
    {
      if (ls[n] > threshold && threshold > ls[n + 1])
      {
        out.k0 = col.k;
        out.n_split = static_cast<int>(n) + 1;
        out.n_split_found = true;
        break;
      }
    }
    if (out.n_split_found)
    {
      break;
    }
  }
  return out;
}

double ModeCombination::f_m(double t) const
{
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
  {
    sum += std::abs(coeffs[j]) * std::exp(lambdas[j] * t);
  }
  return sum;
}

double ModeCombination::combination_norm_sq(double delta, double t) const
{
  const int m = static_cast<int>(coeffs.size());
  double sum = 0.0;
  for (int i = 0; i < m; ++i)
  {
    for (int j = 0; j < m; ++j)
    {
      sum += coeffs[i] * coeffs[j] * std::exp((lambdas[i] + lambdas[j]) * t) *
             velocity_gram(i, j);
    }
  }
  return delta * delta * sum;
}

ModeCombination make_mode_combination(const std::vector<GrowthMode> &modes,
                                      const std::vector<double> &C, const SpectralBasis &basis,
                                      double L)
{
  if (modes.size() < 2)
  {
    throw std::invalid_argument(
        "make_mode_combination: normalization unverifiable with fewer than 2 modes");
  }
  if (C.size() != modes.size())
  {
    throw std::invalid_argument("make_mode_combination: coefficient count mismatch");
  }
  bool tail = false;
  for (std::size_t j = 1; j < C.size(); ++j)
  {
    tail = tail || C[j] != 0.0;
  }
  if (!tail)
  {
    throw std::invalid_argument(
        "make_mode_combination: normalization unverifiable with an all-zero tail");
  }
  const double k = modes.front().k;
  for (const auto &m : modes)
  {
    if (m.k != k)
    {
      throw std::invalid_argument("make_mode_combination: modes must share one wave number");
    }
  }

  const int m = static_cast<int>(modes.size());
  ModeCombination comb;
  comb.coeffs = C;
  comb.lambdas.reserve(m);
  for (const auto &mode : modes)
  {
    comb.lambdas.push_back(mode.lambda_n);
  }

  // <u_i, u_j>_{L2(Omega)} = pi L  int (theta_i theta_j + phi_i phi_j) dx2;
  // the cos^2 / sin^2 factors over the torus are extracted analytically.
  const double pi_L = M_PI * L;
  const Eigen::VectorXd &w = basis.quad_weights;
  comb.velocity_gram.resize(m, m);
  std::vector<Eigen::VectorXd> phis(m), thetas(m);
  for (int i = 0; i < m; ++i)
  {
    phis[i] = basis.values(0).transpose() * modes[i].phi_coeffs;
    thetas[i] = (basis.values(1).transpose() * modes[i].phi_coeffs) / (-k);
  }
  for (int i = 0; i < m; ++i)
  {
    for (int j = i; j < m; ++j)
    {
      const double val =
          pi_L * (w.dot(thetas[i].cwiseProduct(thetas[j])) + w.dot(phis[i].cwiseProduct(phis[j])));
      comb.velocity_gram(i, j) = val;
      comb.velocity_gram(j, i) = val;
    }
  }
  comb.mode_norms.resize(m);
  for (int i = 0; i < m; ++i)
  {
    comb.mode_norms[i] = std::sqrt(comb.velocity_gram(i, i));
  }

  double tail_sum = 0.0;
  for (int j = 1; j < m; ++j)
  {
    tail_sum += std::abs(C[j]) * comb.mode_norms[j];
  }
  comb.normalized_ok =
      std::abs(C[0]) * comb.mode_norms[0] > 0.5 * tail_sum && tail_sum > 0.0;
  return comb;
}

double solve_t_delta(const ModeCombination &comb, double delta, double eps0)
{
  if (!(delta > 0.0) || !(eps0 > 0.0))
  {
    throw std::invalid_argument("solve_t_delta: delta and eps0 must be positive");
  }
  if (delta * comb.f_m(0.0) >= eps0)
  {
    return 0.0;
  }
  double lo = 0.0, hi = 1.0;
  while (delta * comb.f_m(hi) < eps0)
  {
    hi *= 2.0;
  }
  while (hi - lo > 1e-15 * std::max(1.0, hi))
  {
    const double mid = 0.5 * (lo + hi);
    if (delta * comb.f_m(mid) < eps0)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double VelocityField::w1(double x1, double x2) const
{
  double sum = 0.0;
  Eigen::VectorXd pt(1);
  pt[0] = x2;
  for (const auto &c : components)
  {
    const double theta = -evaluate_expansion(*basis, c.phi_coeffs, pt, 1)[0] / c.k;
    sum += c.amplitude * std::sin(c.k * x1) * theta;
  }
  return sum;
}

double VelocityField::w2(double x1, double x2) const
{
  double sum = 0.0;
  Eigen::VectorXd pt(1);
  pt[0] = x2;
  for (const auto &c : components)
  {
    sum += c.amplitude * std::cos(c.k * x1) *
           evaluate_expansion(*basis, c.phi_coeffs, pt, 0)[0];
  }
  return sum;
}

double VelocityField::grad_norm_sq(double x1, double x2) const
{
  double d1w1 = 0.0, d2w1 = 0.0, d1w2 = 0.0, d2w2 = 0.0;
  Eigen::VectorXd pt(1);
  pt[0] = x2;
  for (const auto &c : components)
  {
    const double phi = evaluate_expansion(*basis, c.phi_coeffs, pt, 0)[0];
    const double dphi = evaluate_expansion(*basis, c.phi_coeffs, pt, 1)[0];
    const double ddphi = evaluate_expansion(*basis, c.phi_coeffs, pt, 2)[0];
    const double theta = -dphi / c.k;
    const double dtheta = -ddphi / c.k;
    d1w1 += c.amplitude * c.k * std::cos(c.k * x1) * theta;
    d2w1 += c.amplitude * std::sin(c.k * x1) * dtheta;
    d1w2 -= c.amplitude * c.k * std::sin(c.k * x1) * phi;
    d2w2 += c.amplitude * std::cos(c.k * x1) * dphi;
  }
  return d1w1 * d1w1 + d2w1 * d2w1 + d1w2 * d1w2 + d2w2 * d2w2;
}

VelocityField VelocityField::from_modes(const std::vector<const GrowthMode *> &modes,
                                        const std::vector<double> &amplitudes,
                                        const SpectralBasis &basis)
{
  if (modes.size() != amplitudes.size())
  {
    throw std::invalid_argument("VelocityField::from_modes: size mismatch");
  }
  VelocityField field;
  field.basis = &basis;
  field.components.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
  {
    field.components.push_back({modes[i]->k, amplitudes[i], modes[i]->phi_coeffs});
  }
  return field;
}

namespace
{

int x1_sample_count(const VelocityField &w, double L)
{
  double k_max = 0.0;
  for (const auto &c : w.components)
  {
    k_max = std::max(k_max, std::abs(c.k));
  }
  // Periodic trapezoid is exact for trig polynomials below the sample count;
  // the integrands are quadratic in the modes.
  return std::max(64, 8 * static_cast<int>(std::ceil(k_max * L)) + 16);
}

}  // namespace

MaximalModeCheck maximal_mode_inequality_check(const VelocityField &w,
                                               const DensityProfile &profile, double g,
                                               double mu, const SlipCoefficients &slip,
                                               double capital_lambda, double L)
{
  const int n1 = x1_sample_count(w, L);
  const double dx1 = 2.0 * M_PI * L / n1;
  const Eigen::VectorXd &x2 = w.basis->quad_nodes;
  const Eigen::VectorXd &w2q = w.basis->quad_weights;

  double grav = 0.0, kinetic = 0.0, gradient = 0.0, boundary = 0.0;
  for (int i = 0; i < n1; ++i)
  {
    const double x1 = i * dx1;
    for (int q = 0; q < x2.size(); ++q)
    {
      const double wq = dx1 * w2q[q];
      const double v1 = w.w1(x1, x2[q]);
      const double v2 = w.w2(x1, x2[q]);
      grav += wq * g * profile.rho_prime(x2[q]) * v2 * v2;
      kinetic += wq * profile.rho(x2[q]) * (v1 * v1 + v2 * v2);
      gradient += wq * w.grad_norm_sq(x1, x2[q]);
    }
    const double top = w.w1(x1, 1.0);
    const double bottom = w.w1(x1, -1.0);
    boundary += dx1 * (slip.xi_plus * top * top + slip.xi_minus * bottom * bottom);
  }

  MaximalModeCheck check;
  check.lhs = grav + capital_lambda * boundary;
  check.rhs = capital_lambda * capital_lambda * kinetic + capital_lambda * mu * gradient;
  check.slack = check.rhs - check.lhs;
  return check;
}

double boundary_dissipation_quotient(const VelocityField &w, const SlipCoefficients &slip,
                                     double L)
{
  const int n1 = x1_sample_count(w, L);
  const double dx1 = 2.0 * M_PI * L / n1;
  const Eigen::VectorXd &x2 = w.basis->quad_nodes;
  const Eigen::VectorXd &w2q = w.basis->quad_weights;

  double gradient = 0.0, boundary = 0.0;
  for (int i = 0; i < n1; ++i)
  {
    const double x1 = i * dx1;
    for (int q = 0; q < x2.size(); ++q)
    {
      gradient += dx1 * w2q[q] * w.grad_norm_sq(x1, x2[q]);
    }
    const double top = w.w1(x1, 1.0);
    const double bottom = w.w1(x1, -1.0);
    boundary += dx1 * (slip.xi_plus * top * top + slip.xi_minus * bottom * bottom);
  }
  if (gradient == 0.0)
  {
    throw std::invalid_argument("boundary_dissipation_quotient: zero field");
  }
  return boundary / gradient;
}

}  // namespace rtslip
