// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "rtslip/critical.hpp"
#include "rtslip/dispersion.hpp"
#include "rtslip/errors.hpp"
#include "rtslip/io.hpp"

using namespace rtslip;

namespace
{

struct Fixture
{
  DensityProfile profile = make_profile(ProfileKind::linear, {2.0, 1.0});
  SpectralBasis basis = build_basis(32);
};

}  // namespace

TEST_CASE("lattice sweep populates every supercritical column")
{
  Fixture f;
  const DispersionCurve curve = sweep(f.profile, f.basis, 1.0, 1.0, {0.0, 0.0},
                                      KSelection::lattice(1.0, 8), 3, 1e-10);
  REQUIRE(curve.columns.size() == 8);
  const double bound = lambda_upper_bound(f.profile, 1.0);
  for (int j = 0; j < 8; ++j)
  {
    const auto &col = curve.columns[j];
    CHECK(col.k == doctest::Approx(j + 1.0));
    CHECK(!col.skipped);
    CHECK(col.mu_c == 0.0);
    REQUIRE(col.modes.size() == 3);
    for (const auto &mode : col.modes)
    {
      CHECK(mode.lambda_n > 0.0);
      CHECK(mode.lambda_n <= bound);
    }
  }
}

TEST_CASE("subcritical columns are skipped, not fatal")
{
  Fixture f;
  // mu_c(1,(1,1)) ~ 0.5908 > 0.55 > mu_c(2,(1,1)) ~ 0.2763
  const DispersionCurve curve = sweep(f.profile, f.basis, 1.0, 0.55, {1.0, 1.0},
                                      KSelection::lattice(1.0, 3), 2, 1e-10);
  CHECK(curve.columns[0].skipped);
  CHECK(curve.columns[0].modes.empty());
  CHECK(!curve.columns[1].skipped);
  CHECK(!curve.columns[2].skipped);
  for (const auto &col : curve.columns)
  {
    CHECK(col.mu_c == doctest::Approx(mu_c_closed_form(col.k, {1.0, 1.0})).epsilon(1e-12));
  }
  // mu_c strictly decreasing along the columns
  CHECK(curve.columns[0].mu_c > curve.columns[1].mu_c);
  CHECK(curve.columns[1].mu_c > curve.columns[2].mu_c);
}

TEST_CASE("sweep argument guards")
{
  Fixture f;
  CHECK_THROWS_AS(KSelection::grid({}), std::invalid_argument);
  CHECK_THROWS_AS(KSelection::grid({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(KSelection::lattice(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(sweep(f.profile, f.basis, 1.0, 1.0, {0.0, 0.0},
                        KSelection::lattice(1.0, 2), 0, 1e-10),
                  std::invalid_argument);
}

TEST_CASE("capital Lambda: maximizing column and window saturation")
{
  Fixture f;
  const DispersionCurve c8 = sweep(f.profile, f.basis, 1.0, 1.0, {0.0, 0.0},
                                   KSelection::lattice(1.0, 8), 1, 1e-10);
  const DispersionCurve c16 = sweep(f.profile, f.basis, 1.0, 1.0, {0.0, 0.0},
                                    KSelection::lattice(1.0, 16), 1, 1e-10);
  const auto [cap8, k8] = capital_lambda(c8);
  const auto [cap16, k16] = capital_lambda(c16);
  CHECK(k8 == doctest::Approx(2.0));
  CHECK(k16 == doctest::Approx(2.0));
  CHECK(std::abs(cap8 - cap16) <= 1e-8 * cap8);
  CHECK(cap8 <= lambda_upper_bound(f.profile, 1.0));

  // single-column curve: Lambda is that column's leading rate
  const DispersionCurve single = sweep(f.profile, f.basis, 1.0, 1.0, {0.0, 0.0},
                                       KSelection::grid({2.0}), 1, 1e-10);
  CHECK(capital_lambda(single).first ==
        doctest::Approx(single.columns[0].modes[0].lambda_n));

  // every column subcritical -> error
  const DispersionCurve dead = sweep(f.profile, f.basis, 1.0, 0.1, {1.0, 1.0},
                                     KSelection::lattice(1.0, 3), 1, 1e-10);
  CHECK_THROWS_AS(capital_lambda(dead), std::invalid_argument);
}

TEST_CASE("nonlinear constants: conventions, identities, spectral gap")
{
  Fixture f;
  SUBCASE("vanishing slip uses the varpi0 = 1 convention")
  {
    const DispersionCurve curve = sweep(f.profile, f.basis, 1.0, 1.0, {0.0, 0.0},
                                        KSelection::lattice(1.0, 8), 8, 1e-10);
    const NonlinearConstants nc = nonlinear_constants(curve, 1.0, {0.0, 0.0}, 1.0);
    CHECK(nc.mu_c_lattice == 0.0);
    CHECK(nc.varpi0 == 1.0);
    CHECK(nc.nu0 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(nc.m1 + 1.0 / nc.m1 == doctest::Approx(2.0 * nc.nu0).epsilon(1e-12));
    // spectral gap: lambda_1(2) > (8/9) Lambda > lambda_2(2)
    CHECK(nc.n_split_found);
    CHECK(nc.k0 == doctest::Approx(2.0));
    CHECK(nc.n_split == 1);
    const double threshold = (2.0 * nc.nu0 / 3.0) * nc.capital_lambda;
    const auto &col = curve.columns[1];
    CHECK(col.modes[0].lambda_n > threshold);
    CHECK(threshold > col.modes[1].lambda_n);
  }
  SUBCASE("slip tuned to a unit lattice threshold reproduces the reference constants")
  {
    const double xi = 1.0 / mu_c_closed_form(1.0, {1.0, 1.0});
    const SlipCoefficients slip{xi, xi};
    CHECK(mu_c_lattice(1.0, slip) == doctest::Approx(1.0).epsilon(1e-13));
    const DispersionCurve curve =
        sweep(f.profile, f.basis, 1.0, 4.0, slip, KSelection::lattice(1.0, 4), 3, 1e-10);
    const NonlinearConstants nc = nonlinear_constants(curve, 4.0, slip, 1.0);
    CHECK(nc.varpi0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(nc.nu0 == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(nc.m1 == doctest::Approx(2.3797958971132712).epsilon(1e-12));
    CHECK(nc.m2 == doctest::Approx(2.6191448962253836).epsilon(1e-11));
    CHECK(nc.m1 + 1.0 / nc.m1 == doctest::Approx(2.8).epsilon(1e-12));
    // the balance identity behind the choice of m2 (Lambda cancels)
    const double lhs =
        nc.m1 * std::pow(4.0 / nc.m1 + nc.m2, 2) / (2.0 * (4.0 - nc.mu_c_lattice));
    CHECK(lhs == doctest::Approx(2.0 * nc.nu0 * nc.m2).epsilon(1e-10));
    CHECK(nc.mu_c_sup_all_k == doctest::Approx(mu_c_sup(slip)).epsilon(1e-15));
  }
  SUBCASE("threshold violation is an error")
  {
    const DispersionCurve curve = sweep(f.profile, f.basis, 1.0, 1.5, {1.0, 1.0},
                                        KSelection::lattice(1.0, 2), 2, 1e-10);
    // 3 mu_c(Xi) = 3 * 0.5908 = 1.772 > 1.5
    CHECK_THROWS_AS(nonlinear_constants(curve, 1.5, {1.0, 1.0}, 1.0),
                    ThresholdViolationError);
  }
}

TEST_CASE("mode combinations: normalization verdict and envelope")
{
  Fixture f;
  const AssembledOperators ops = assemble(f.basis, f.profile, 1.0, {0.0, 0.0});
  const auto modes = growth_sequence(ops, 1.0, 1.0, 3, 1e-10);

  SUBCASE("small tail passes, dominant tail fails")
  {
    const auto ok = make_mode_combination(modes, {1.0, 1e-3, 0.0}, f.basis, 1.0);
    CHECK(ok.normalized_ok);
    CHECK(ok.f_m(0.0) == doctest::Approx(1.0 + 1e-3).epsilon(1e-14));

    const auto bad = make_mode_combination(modes, {0.0, 1.0, 0.0}, f.basis, 1.0);
    CHECK(!bad.normalized_ok);
  }
  SUBCASE("argument guards")
  {
    CHECK_THROWS_AS(make_mode_combination({modes[0]}, {1.0}, f.basis, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_mode_combination(modes, {1.0, 0.0, 0.0}, f.basis, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_mode_combination(modes, {1.0, 1.0}, f.basis, 1.0),
                    std::invalid_argument);
  }
  SUBCASE("combination norm dominates the leading-mode envelope")
  {
    const auto comb = make_mode_combination(modes, {1.0, 1e-3, 5e-4}, f.basis, 1.0);
    REQUIRE(comb.normalized_ok);
    const double delta = 1e-6;
    for (double t : {0.0, 1.0, 5.0, 20.0})
    {
      const double lhs = comb.combination_norm_sq(delta, t);
      const double rhs = 0.25 * delta * delta * 1.0 *
                         std::exp(2.0 * comb.lambdas[0] * t) * comb.velocity_gram(0, 0);
      CHECK(lhs >= rhs - 1e-12 * std::abs(rhs));
    }
  }
}

TEST_CASE("escape time solves delta F_M(T) = eps0")
{
  Fixture f;
  const AssembledOperators ops = assemble(f.basis, f.profile, 1.0, {0.0, 0.0});
  const auto modes = growth_sequence(ops, 1.0, 1.0, 2, 1e-10);

  SUBCASE("single mode matches the logarithm formula")
  {
    ModeCombination single;
    single.coeffs = {0.7};
    single.lambdas = {modes[0].lambda_n};
    single.mode_norms = {1.0};
    const double delta = 1e-6, eps0 = 1e-2;
    const double t = solve_t_delta(single, delta, eps0);
    const double analytic = std::log(eps0 / (delta * 0.7)) / modes[0].lambda_n;
    CHECK(std::abs(t - analytic) <= 1e-12 * analytic);
  }
  SUBCASE("boundary case returns zero")
  {
    ModeCombination single;
    single.coeffs = {1.0};
    single.lambdas = {modes[0].lambda_n};
    CHECK(solve_t_delta(single, 1e-2, 1e-2) == 0.0);
    CHECK(solve_t_delta(single, 1.0, 1e-3) == 0.0);
  }
  SUBCASE("two modes: residual at the root is tiny")
  {
    const auto comb = make_mode_combination(modes, {1.0, 0.5}, f.basis, 1.0);
    const double delta = 1e-6, eps0 = 1e-2;
    const double t = solve_t_delta(comb, delta, eps0);
    CHECK(std::abs(delta * comb.f_m(t) - eps0) <= 1e-12 * eps0);
  }
}

TEST_CASE("maximal-mode inequality and boundary dissipation quotient")
{
  // Xi = (0.3, 0.3), mu = 1 > 3 mu_c(Xi) = 0.532
  Fixture f;
  const SlipCoefficients slip{0.3, 0.3};
  const DispersionCurve curve =
      sweep(f.profile, f.basis, 1.0, 1.0, slip, KSelection::lattice(1.0, 4), 3, 1e-10);
  const auto [cap, argmax_k] = capital_lambda(curve);

  SUBCASE("zero field has zero slack")
  {
    VelocityField empty;
    empty.basis = &f.basis;
    const auto chk = maximal_mode_inequality_check(empty, f.profile, 1.0, 1.0, slip, cap, 1.0);
    CHECK(chk.lhs == 0.0);
    CHECK(chk.rhs == 0.0);
    CHECK(chk.slack == 0.0);
    CHECK_THROWS_AS(boundary_dissipation_quotient(empty, slip, 1.0), std::invalid_argument);
  }
  SUBCASE("every computed mode satisfies the inequality")
  {
    for (const auto &col : curve.columns)
    {
      for (const auto &mode : col.modes)
      {
        const VelocityField w = VelocityField::from_modes({&mode}, {1.0}, f.basis);
        const auto chk =
            maximal_mode_inequality_check(w, f.profile, 1.0, 1.0, slip, cap, 1.0);
        CHECK(chk.slack >= -1e-10 * std::abs(chk.rhs));
        CHECK(boundary_dissipation_quotient(w, slip, 1.0) <=
              mu_c_lattice(1.0, slip) + 1e-10);
      }
    }
  }
  SUBCASE("near-equality at the maximizing mode")
  {
    const auto &col = curve.columns[static_cast<int>(argmax_k) - 1];
    const VelocityField w = VelocityField::from_modes({&col.modes[0]}, {1.0}, f.basis);
    const auto chk = maximal_mode_inequality_check(w, f.profile, 1.0, 1.0, slip, cap, 1.0);
    CHECK(chk.slack >= -1e-10 * std::abs(chk.rhs));
    CHECK(std::abs(chk.slack) <= 1e-8 * std::abs(chk.rhs));
  }
  SUBCASE("random two-mode combinations, same and different wave numbers")
  {
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    for (int trial = 0; trial < 12; ++trial)
    {
      const int ka = trial % 4;
      const int kb = (trial < 6) ? ka : (trial * 7 + 1) % 4;  // same column first
      const int na = trial % 3, nb = (trial < 6) ? (na + 1) % 3 : (trial + 1) % 3;
      const VelocityField w = VelocityField::from_modes(
          {&curve.columns[ka].modes[na], &curve.columns[kb].modes[nb]},
          {amp(rng), amp(rng)}, f.basis);
      const auto chk =
          maximal_mode_inequality_check(w, f.profile, 1.0, 1.0, slip, cap, 1.0);
      CHECK(chk.slack >= -1e-10 * std::abs(chk.rhs));
      CHECK(boundary_dissipation_quotient(w, slip, 1.0) <=
            mu_c_lattice(1.0, slip) + 1e-10);
    }
  }
}

TEST_CASE("dispersion serialization is deterministic with the documented shape")
{
  Fixture f;
  const DispersionCurve curve = sweep(f.profile, f.basis, 1.0, 0.55, {1.0, 1.0},
                                      KSelection::lattice(1.0, 3), 2, 1e-10);
  const std::string csv = dispersion_to_csv(curve);
  CHECK(csv.rfind("k,mu_c,lambda_1,lambda_2,skipped\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
  // skipped column carries empty lambda cells and the flag
  CHECK(csv.find(",,,1\n") != std::string::npos);

  const DispersionCurve again = sweep(f.profile, f.basis, 1.0, 0.55, {1.0, 1.0},
                                      KSelection::lattice(1.0, 3), 2, 1e-10);
  CHECK(dispersion_to_csv(again) == csv);

  RunConfig config;
  config.slip = {1.0, 1.0};
  config.mu = 0.55;
  const std::string json = dispersion_to_json(curve, config);
  CHECK(json.find("\"config\"") != std::string::npos);
  CHECK(json.find("\"skipped\": true") != std::string::npos);
  CHECK(json == dispersion_to_json(again, config));
}
