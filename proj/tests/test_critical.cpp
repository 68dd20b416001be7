// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles/fd_oracle.hpp"
#include "rtslip/critical.hpp"

using namespace rtslip;

namespace
{

// Reference quotient of a smooth (not necessarily polynomial) trial,
// evaluated by Gauss quadrature dense enough for machine accuracy.
template <typename F>
double reference_quotient(const F &f, double k, const SlipCoefficients &slip)
{
  const QuadratureRule rule = gauss_legendre(160);
  const double num =
      slip.xi_minus * f.d1(-1.0) * f.d1(-1.0) + slip.xi_plus * f.d1(1.0) * f.d1(1.0);
  double den = 0.0;
  for (int i = 0; i < rule.nodes.size(); ++i)
  {
    const double x = rule.nodes[i];
    den += rule.weights[i] * (f.d2(x) * f.d2(x) + 2.0 * k * k * f.d1(x) * f.d1(x) +
                              std::pow(k, 4) * f.value(x) * f.value(x));
  }
  return num / den;
}

double symmetric_slip_closed_form(double k, double xi)
{
  const double s2 = std::sinh(2.0 * k), c2 = std::cosh(2.0 * k);
  return xi * (c2 - 1.0) * (s2 + 2.0 * k) / (2.0 * k * s2 * s2);
}

double one_sided_closed_form(double k, double xi)
{
  const double s2 = std::sinh(2.0 * k);
  return xi * (std::sinh(4.0 * k) - 4.0 * k) / (4.0 * k * s2 * s2);
}

}  // namespace

TEST_CASE("closed form: vanishing slip, symmetric and one-sided reductions")
{
  for (double k : {0.25, 1.0, 4.0})
  {
    CHECK(mu_c_closed_form(k, {0.0, 0.0}) == 0.0);
  }
  for (double k : {0.5, 1.0, 2.0, 7.0})
  {
    CHECK(mu_c_closed_form(k, {1.0, 1.0}) ==
          doctest::Approx(symmetric_slip_closed_form(k, 1.0)).epsilon(1e-13));
    CHECK(mu_c_closed_form(k, {0.0, 1.0}) ==
          doctest::Approx(one_sided_closed_form(k, 1.0)).epsilon(1e-13));
    CHECK(mu_c_closed_form(k, {1.0, 0.0}) ==
          doctest::Approx(one_sided_closed_form(k, 1.0)).epsilon(1e-13));
  }
  // frozen reference value at k = 1, Xi = (1,1)
  CHECK(mu_c_closed_form(1.0, {1.0, 1.0}) ==
        doctest::Approx(0.59078424878489544).epsilon(1e-14));
  CHECK_THROWS_AS(mu_c_closed_form(0.0, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(mu_c_closed_form(-1.0, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("closed form stays finite and smooth across the large-k branch switch")
{
  for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{0.0, 1.0},
                    SlipCoefficients{2.0, 0.5}})
  {
    const double below = mu_c_closed_form(20.0 - 1e-9, slip);
    const double above = mu_c_closed_form(20.0 + 1e-9, slip);
    CHECK(std::abs(below - above) <= 1e-9 * below);
    // far beyond the naive overflow point of sinh^2(2k)
    const double huge = mu_c_closed_form(500.0, slip);
    CHECK(std::isfinite(huge));
    CHECK(huge > 0.0);
    CHECK(huge <= mu_c_high_k_bound(500.0, slip));
  }
}

TEST_CASE("closed form decreases strictly in k")
{
  for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{0.0, 1.0},
                    SlipCoefficients{1.0, 4.0}, SlipCoefficients{2.0, 0.5}})
  {
    double prev = mu_c_closed_form(0.01, slip);
    for (double k = 0.11; k <= 20.0; k += 0.1)
    {
      const double cur = mu_c_closed_form(k, slip);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("supremum over all wave numbers")
{
  CHECK(mu_c_sup({1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu_c_sup({0.0, 1.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mu_c_sup({1.0, 0.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mu_c_sup({4.0, 1.0}) ==
        doctest::Approx((5.0 + std::sqrt(13.0)) / 3.0).epsilon(1e-15));
  // the small-k limit of the closed form approaches the supremum
  CHECK(mu_c_closed_form(1e-3, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("lattice supremum equals the closed form at the first lattice point")
{
  CHECK(mu_c_lattice(1.0, {1.0, 1.0}) ==
        doctest::Approx(mu_c_closed_form(1.0, {1.0, 1.0})).epsilon(1e-15));
  CHECK(mu_c_lattice(2.0, {0.3, 0.7}) ==
        doctest::Approx(mu_c_closed_form(0.5, {0.3, 0.7})).epsilon(1e-15));
  CHECK(mu_c_lattice(1.0, {0.0, 0.0}) == 0.0);
}

TEST_CASE("two-term small-k expansion")
{
  SUBCASE("leading term is the supremum")
  {
    for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{0.0, 1.0}})
    {
      CHECK(mu_c_small_k(1e-9, slip) == doctest::Approx(mu_c_sup(slip)).epsilon(1e-14));
    }
    CHECK(mu_c_small_k(0.5, {0.0, 0.0}) == 0.0);
  }
  SUBCASE("k^2 coefficients match the expansion of the closed form")
  {
    // Xi = (1,1): coefficient 2/3; Xi = (1,0): 16/45. Fitted from the closed
    // form itself, which fixes the prefactor at 2/45.
    const double c_sym = (mu_c_sup({1.0, 1.0}) - mu_c_small_k(0.01, {1.0, 1.0})) / 1e-4;
    CHECK(c_sym == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const double c_one = (mu_c_sup({1.0, 0.0}) - mu_c_small_k(0.01, {1.0, 0.0})) / 1e-4;
    CHECK(c_one == doctest::Approx(16.0 / 45.0).epsilon(1e-12));
  }
  SUBCASE("remainder is quartically small with a stable constant")
  {
    // mu_c is even in k, so the remainder after the k^2 term scales as k^4;
    // that is stronger than a cubic bound and makes diff/k^4 the stable fit.
    for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{0.0, 1.0},
                      SlipCoefficients{2.0, 0.5}})
    {
      std::vector<double> cs;
      for (double k : {0.1, 0.05, 0.025})
      {
        const double diff = std::abs(mu_c_closed_form(k, slip) - mu_c_small_k(k, slip));
        cs.push_back(diff / (k * k * k * k));
      }
      const double lo = std::min({cs[0], cs[1], cs[2]});
      const double hi = std::max({cs[0], cs[1], cs[2]});
      CHECK(hi / lo <= 1.25);
      // the cubic envelope quoted for the expansion holds with the constant
      // taken from the coarsest point
      const double c3 = cs[0] * 0.1;
      for (double k : {0.1, 0.05, 0.025})
      {
        CHECK(std::abs(mu_c_closed_form(k, slip) - mu_c_small_k(k, slip)) <=
              c3 * k * k * k * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("high-k bound dominates the closed form")
{
  for (double k : {1.0, 2.0, 5.0, 10.0})
  {
    CHECK(mu_c_high_k_bound(k, {0.0, 0.0}) == 0.0);
  }
  CHECK(mu_c_high_k_bound(10.0, {1.0, 1.0}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(mu_c_closed_form(10.0, {1.0, 1.0}) <= 0.2);
  double prev = mu_c_high_k_bound(1.0, {1.0, 2.0});
  for (int i = 1; i <= 50; ++i)
  {
    const double k = 1.0 + 9.0 * i / 50.0;
    const double bound = mu_c_high_k_bound(k, {1.0, 2.0});
    CHECK(bound < prev);
    CHECK(mu_c_closed_form(k, {1.0, 2.0}) <= bound);
    prev = bound;
  }
}

TEST_CASE("1/mu_c solves the wave-number quadratic when both slips are active")
{
  for (double k : {0.5, 1.0, 2.0, 6.0})
  {
    for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{2.0, 0.5},
                      SlipCoefficients{0.3, 0.3}})
    {
      const double mu = mu_c_closed_form(k, slip);
      const double s2 = std::sinh(2.0 * k), c2 = std::cosh(2.0 * k);
      const double xm = slip.xi_minus, xp = slip.xi_plus;
      const double t1 = (s2 * s2 - 4.0 * k * k) * xp * xm;
      const double t2 = -2.0 * k * (s2 * c2 - 2.0 * k) * (xp + xm) * mu;
      const double t3 = 4.0 * k * k * (c2 * c2 - 1.0) * mu * mu;
      const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
      CHECK(std::abs(t1 + t2 + t3) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("1/mu_c^s solves the zero-k quadratic")
{
  for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{2.0, 0.5},
                    SlipCoefficients{4.0, 1.0}})
  {
    const double beta = 1.0 / mu_c_sup(slip);
    const double r = slip.xi_minus * slip.xi_plus * beta * beta -
                     2.0 * (slip.xi_plus + slip.xi_minus) * beta + 3.0;
    CHECK(std::abs(r) <= 1e-12 * (3.0 + 2.0 * (slip.xi_plus + slip.xi_minus) * beta));
  }
}

TEST_CASE("discrete maximization approaches the closed form from below")
{
  const SlipCoefficients slip{1.0, 1.0};
  const double closed = mu_c_closed_form(1.0, slip);

  SUBCASE("value at n_modes = 48")
  {
    const SpectralBasis basis = build_basis(48);
    const CriticalViscosityResult r = mu_c_numeric(basis, 1.0, slip);
    CHECK(r.value <= closed + 1e-9);
    CHECK((closed - r.value) / closed <= 1e-7);
    // the maximizer satisfies the boundary normalization and attains the value
    CHECK(rayleigh_quotient(basis, 1.0, slip, r.maximizer_coeffs) ==
          doctest::Approx(r.value).epsilon(1e-10));
    const double dm = basis.trace_d1_minus.dot(r.maximizer_coeffs);
    const double dp = basis.trace_d1_plus.dot(r.maximizer_coeffs);
    CHECK(slip.xi_minus * dm * dm + slip.xi_plus * dp * dp ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("nondecreasing in n_modes")
  {
    double prev = 0.0;
    for (int n : {8, 16, 32, 48})
    {
      const SpectralBasis basis = build_basis(n);
      const double v = mu_c_numeric(basis, 1.0, slip).value;
      CHECK(v >= prev - 1e-13);
      CHECK(v <= closed + 1e-9);
      prev = v;
    }
  }
  SUBCASE("vanishing slip short-circuits")
  {
    const SpectralBasis basis = build_basis(8);
    const CriticalViscosityResult r = mu_c_numeric(basis, 1.0, {0.0, 0.0});
    CHECK(r.value == 0.0);
    CHECK(r.maximizer_coeffs.size() == 0);
  }
}

TEST_CASE("independent finite-difference quotient corroborates the closed form")
{
  // Ghost-node FD discretization of the same quotient; second order, so the
  // Richardson pair is good to about 1e-6 relative here.
  const double closed = mu_c_closed_form(1.0, {1.0, 1.0});
  const double v500 = fd_oracle::mu_c_quotient(1.0, 1.0, 1.0, 500);
  const double v1000 = fd_oracle::mu_c_quotient(1.0, 1.0, 1.0, 1000);
  CHECK(v500 == doctest::Approx(0.59078666321106488).epsilon(1e-9));
  CHECK(v1000 == doctest::Approx(0.59078530100161819).epsilon(1e-9));
  const double extrapolated = v1000 + (v1000 - v500) / 3.0;
  CHECK(std::abs(extrapolated - closed) <= 5e-6 * closed);
}

TEST_CASE("closed-form extremals attain the maximum")
{
  SUBCASE("one-sided")
  {
    for (double k : {0.5, 1.0, 3.0})
    {
      const ExtremalFunction f = extremal_closed_form(k, {0.0, 1.0});
      CHECK(std::abs(f.value(-1.0)) <= 1e-12);
      CHECK(std::abs(f.value(1.0)) <= 1e-12);
      const double q = reference_quotient(f, k, {0.0, 1.0});
      CHECK(q == doctest::Approx(one_sided_closed_form(k, 1.0)).epsilon(1e-10));
      const double constraint = f.d1(1.0) * f.d1(1.0);
      CHECK(constraint == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(f.d1(1.0) >= 0.0);
      // mirrored wall
      const ExtremalFunction g = extremal_closed_form(k, {1.0, 0.0});
      CHECK(reference_quotient(g, k, {1.0, 0.0}) ==
            doctest::Approx(one_sided_closed_form(k, 1.0)).epsilon(1e-10));
      CHECK(g.d1(-1.0) >= 0.0);
    }
  }
  SUBCASE("both walls active, both orderings of the slip pair")
  {
    for (auto slip : {SlipCoefficients{1.0, 1.0}, SlipCoefficients{2.0, 1.0},
                      SlipCoefficients{1.0, 2.0}, SlipCoefficients{0.5, 2.0},
                      SlipCoefficients{2.0, 0.5}})
    {
      for (double k : {0.5, 1.0, 2.0})
      {
        const ExtremalFunction f = extremal_closed_form(k, slip);
        CHECK(std::abs(f.value(-1.0)) <= 1e-11);
        CHECK(std::abs(f.value(1.0)) <= 1e-11);
        const double q = reference_quotient(f, k, slip);
        CHECK(q == doctest::Approx(mu_c_closed_form(k, slip)).epsilon(1e-10));
        const double constraint = slip.xi_minus * f.d1(-1.0) * f.d1(-1.0) +
                                  slip.xi_plus * f.d1(1.0) * f.d1(1.0);
        CHECK(constraint == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
  SUBCASE("no extremal without slip")
  {
    CHECK_THROWS_AS(extremal_closed_form(1.0, {0.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("zero-k extremals attain the supremum")
{
  for (auto slip : {SlipCoefficients{0.0, 1.0}, SlipCoefficients{1.0, 0.0},
                    SlipCoefficients{1.0, 1.0}, SlipCoefficients{2.0, 0.5},
                    SlipCoefficients{4.0, 1.0}})
  {
    const ZeroKExtremal f = extremal_zero_k(slip);
    const QuadratureRule rule = gauss_legendre(24);
    double den = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i)
    {
      den += rule.weights[i] * f.d2(rule.nodes[i]) * f.d2(rule.nodes[i]);
    }
    const double num = slip.xi_minus * f.d1(-1.0) * f.d1(-1.0) +
                       slip.xi_plus * f.d1(1.0) * f.d1(1.0);
    CHECK(num == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(num / den == doctest::Approx(mu_c_sup(slip)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(extremal_zero_k({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("numeric maximizer is collinear with the closed-form extremal")
{
  const SpectralBasis basis = build_basis(48);
  for (auto slip : {SlipCoefficients{0.0, 1.0}, SlipCoefficients{1.0, 1.0},
                    SlipCoefficients{2.0, 0.5}})
  {
    const CriticalViscosityResult r = mu_c_numeric(basis, 1.0, slip);
    const ExtremalFunction f = extremal_closed_form(1.0, slip);
    const Eigen::VectorXd numeric =
        basis.values(0).transpose() * r.maximizer_coeffs;
    Eigen::VectorXd closed(basis.quad_nodes.size());
    for (int i = 0; i < basis.quad_nodes.size(); ++i)
    {
      closed[i] = f.value(basis.quad_nodes[i]);
    }
    const Eigen::VectorXd w = basis.quad_weights;
    const double inner = w.dot(numeric.cwiseProduct(closed));
    const double cosine = std::abs(inner) / std::sqrt(w.dot(numeric.cwiseAbs2()) *
                                                      w.dot(closed.cwiseAbs2()));
    CHECK(cosine >= 1.0 - 1e-6);
  }
}

TEST_CASE("rayleigh quotient on explicit trials")
{
  const SpectralBasis basis = build_basis(16);

  // (x^2-1)(x+3) in basis coordinates
  Eigen::VectorXd cubic = Eigen::VectorXd::Zero(16);
  cubic[0] = 1.5;
  cubic[1] = 0.25;
  CHECK(rayleigh_quotient(basis, 0.0, {0.0, 1.0}, cubic) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(rayleigh_quotient(basis, 0.0, {0.0, 2.5}, cubic) ==
        doctest::Approx(2.5 * 2.0 / 3.0).epsilon(1e-12));

  // x^2 - 1: the symmetric-slip maximizer at k = 0
  Eigen::VectorXd parabola = Eigen::VectorXd::Zero(16);
  parabola[0] = 0.5;
  for (double xi : {1.0, 0.7})
  {
    CHECK(rayleigh_quotient(basis, 0.0, {xi, xi}, parabola) ==
          doctest::Approx(xi).epsilon(1e-12));
    CHECK(rayleigh_quotient(basis, 0.0, {xi, xi}, parabola) ==
          doctest::Approx(mu_c_sup({xi, xi})).epsilon(1e-12));
  }

  // x(x^2-1) = (psi_1 + psi_... ) -- x^3 - x in basis coordinates: T3 = 4x^3-3x
  // x^3 - x = (T3 - T1)/4 = psi_1/4
  Eigen::VectorXd odd_cubic = Eigen::VectorXd::Zero(16);
  odd_cubic[1] = 0.25;
  CHECK(rayleigh_quotient(basis, 0.0, {1.0, 1.0}, odd_cubic) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // the parabola trial attains xi, so the symmetric supremum is xi, not the
  // xi/3 the odd cubic would suggest
  CHECK(rayleigh_quotient(basis, 0.0, {1.0, 1.0}, odd_cubic) <
        rayleigh_quotient(basis, 0.0, {1.0, 1.0}, parabola));

  CHECK_THROWS_AS(rayleigh_quotient(basis, 0.0, {1.0, 1.0}, Eigen::VectorXd::Zero(16)),
                  std::invalid_argument);
  CHECK_THROWS_AS(rayleigh_quotient(basis, -1.0, {1.0, 1.0}, parabola),
                  std::invalid_argument);
}
