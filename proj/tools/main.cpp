// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: mu-c, growth, dispersion, constants, verify.
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 subcritical
// viscosity, 5 nonlinear-threshold violation.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rtslip/config.hpp"
#include "rtslip/critical.hpp"
#include "rtslip/dispersion.hpp"
#include "rtslip/errors.hpp"
#include "rtslip/growth.hpp"
#include "rtslip/io.hpp"
#include "rtslip/spectrum.hpp"

namespace
{

using namespace rtslip;

struct Overrides
{
  std::optional<double> g, mu, L, xi_minus, xi_plus, tol;
  std::optional<int> n_modes, m_modes, jmax;
  std::optional<std::vector<double>> k_grid;
  std::optional<std::string> profile_kind;
  std::optional<std::vector<double>> profile_params;
  std::optional<std::string> output_dir;
};

RunConfig resolve_config(const std::string &config_path, const Overrides &ov)
{
  RunConfig config;
  if (!config_path.empty())
  {
    config = load_config_file(config_path);
  }
  // precedence: --output-dir flag > config file > environment > "."
  if (const char *env = std::getenv("RTSLIP_OUTPUT_DIR"); env && config.output_dir == ".")
  {
    config.output_dir = env;
  }
  if (ov.profile_kind)
  {
    config.profile_kind = profile_kind_from_string(*ov.profile_kind);
  }
  if (ov.profile_params)
  {
    config.profile_params = *ov.profile_params;
  }
  if (ov.g)
  {
    config.g = *ov.g;
  }
  if (ov.mu)
  {
    config.mu = *ov.mu;
  }
  if (ov.L)
  {
    config.L = *ov.L;
  }
  if (ov.xi_minus)
  {
    config.slip.xi_minus = *ov.xi_minus;
  }
  if (ov.xi_plus)
  {
    config.slip.xi_plus = *ov.xi_plus;
  }
  if (ov.n_modes)
  {
    config.n_modes = *ov.n_modes;
  }
  if (ov.tol)
  {
    config.tol = *ov.tol;
  }
  if (ov.m_modes)
  {
    config.m_modes = *ov.m_modes;
  }
  if (ov.jmax)
  {
    config.k_lattice_jmax = *ov.jmax;
  }
  if (ov.k_grid)
  {
    config.k_grid = *ov.k_grid;
  }
  if (ov.output_dir)
  {
    config.output_dir = *ov.output_dir;
  }
  // Round-trip through the canonical serialization re-validates everything,
  // including flag-supplied values.
  return parse_config_json(config_to_json(config));
}

KSelection k_selection_from(const RunConfig &config)
{
  if (config.k_grid)
  {
    return KSelection::grid(*config.k_grid);
  }
  const int jmax = config.k_lattice_jmax.value_or(8);
  return KSelection::lattice(config.L, jmax);
}

void emit(const std::string &text, const std::string &out_path)
{
  if (out_path.empty())
  {
    std::cout << text;
  }
  else
  {
    write_file(out_path, text);
  }
}

// ---------------------------------------------------------------------------

int cmd_mu_c(const RunConfig &config, const std::vector<double> &k_list, bool closed,
             bool numeric, const std::string &out_path)
{
  for (double k : k_list)
  {
    if (!(k > 0.0))
    {
      throw std::invalid_argument("mu-c: k must be positive (mu_c(-k) = mu_c(k))");
    }
  }
  std::optional<SpectralBasis> basis;
  if (numeric)
  {
    basis.emplace(build_basis(config.n_modes));
  }

  std::ostringstream out;
  out << "k,mu_c_closed";
  if (numeric)
  {
    out << ",mu_c_numeric,rel_gap";
  }
  out << ",mu_c_small_k,mu_c_high_k_bound\n";
  for (double k : k_list)
  {
    const double cf = mu_c_closed_form(k, config.slip);
    out << format_double(k) << "," << format_double(cf);
    if (numeric)
    {
      const double num = mu_c_numeric(*basis, k, config.slip).value;
      const double gap = (cf != 0.0) ? (cf - num) / cf : 0.0;
      out << "," << format_double(num) << "," << format_double(gap);
    }
    const double small = (config.slip.xi_minus + config.slip.xi_plus > 0.0)
                             ? mu_c_small_k(k, config.slip)
                             : 0.0;
    out << "," << format_double(small) << "," << format_double(mu_c_high_k_bound(k, config.slip))
        << "\n";
  }
  if (closed || numeric)
  {
    emit(out.str(), out_path);
  }
  return 0;
}

int cmd_growth(const RunConfig &config, double k, int n_modes_out, bool write_profiles,
               const std::string &out_path)
{
  const DensityProfile profile = make_profile(config.profile_kind, config.profile_params);
  const SpectralBasis basis = build_basis(config.n_modes);
  const AssembledOperators ops = assemble(basis, profile, k, config.slip);
  const std::vector<GrowthMode> modes =
      growth_sequence(ops, config.g, config.mu, n_modes_out, config.tol);
  emit(growth_table_csv(modes), out_path);

  if (write_profiles)
  {
    const Eigen::VectorXd points = Eigen::VectorXd::LinSpaced(201, -1.0, 1.0);
    for (const auto &mode : modes)
    {
      const ModeShape shape = assemble_mode(mode, profile, basis, config.g, k, config.mu);
      const auto path = std::filesystem::path(config.output_dir) /
                        ("mode_" + std::to_string(mode.n) + ".csv");
      write_file(path.string(), mode_profile_csv(shape, points));
    }
  }
  return 0;
}

int cmd_dispersion(const RunConfig &config, const std::string &prefix)
{
  const DensityProfile profile = make_profile(config.profile_kind, config.profile_params);
  const SpectralBasis basis = build_basis(config.n_modes);
  const DispersionCurve curve = sweep(profile, basis, config.g, config.mu, config.slip,
                                      k_selection_from(config), config.m_modes, config.tol);
  const auto dir = std::filesystem::path(config.output_dir);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (prefix + ".csv");
  const auto json_path = dir / (prefix + ".json");
  write_file(csv_path.string(), dispersion_to_csv(curve));
  write_file(json_path.string(), dispersion_to_json(curve, config));
  std::cout << csv_path.string() << "\n" << json_path.string() << "\n";
  return 0;
}

int cmd_constants(const RunConfig &config, const std::string &out_path)
{
  const DensityProfile profile = make_profile(config.profile_kind, config.profile_params);
  const SpectralBasis basis = build_basis(config.n_modes);
  const DispersionCurve curve = sweep(profile, basis, config.g, config.mu, config.slip,
                                      k_selection_from(config), config.m_modes, config.tol);
  const NonlinearConstants constants =
      nonlinear_constants(curve, config.mu, config.slip, config.L);
  emit(constants_to_json(constants, config), out_path);
  return 0;
}

// --------------------------- verify suite ---------------------------------

struct VerifyReport
{
  int failures = 0;
  void line(const std::string &name, bool ok, const std::string &detail = "")
  {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty())
    {
      std::cout << "  (" << detail << ")";
    }
    std::cout << "\n";
    if (!ok)
    {
      ++failures;
    }
  }
};

int cmd_verify(const RunConfig &config)
{
  VerifyReport report;
  const DensityProfile profile = make_profile(config.profile_kind, config.profile_params);
  const int n_modes = std::max(config.n_modes, 32);
  const SpectralBasis basis = build_basis(n_modes);
  const double k1 = 1.0 / config.L;

  {  // quadrature exactness and endpoint traces
    bool ok = true;
    std::string detail;
    for (int p = 0; p <= 2 * (n_modes + 2) + 4; ++p)
    {
      const double exact = (p % 2 == 0) ? 2.0 / (p + 1) : 0.0;
      double q = 0.0;
      for (int i = 0; i < basis.quad_nodes.size(); ++i)
      {
        q += basis.quad_weights[i] * std::pow(basis.quad_nodes[i], p);
      }
      if (std::abs(q - exact) > 1e-12 * std::max(1.0, std::abs(exact)))
      {
        ok = false;
        detail = "degree " + std::to_string(p);
        break;
      }
    }
    Eigen::VectorXd ends(2);
    ends << -1.0, 1.0;
    for (int j = 0; j < n_modes && ok; ++j)
    {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n_modes);
      e[j] = 1.0;
      const Eigen::VectorXd v0 = evaluate_expansion(basis, e, ends, 0);
      const Eigen::VectorXd v1 = evaluate_expansion(basis, e, ends, 1);
      if (std::abs(v0[0]) > 1e-13 || std::abs(v0[1]) > 1e-13 ||
          std::abs(v1[0] - basis.trace_d1_minus[j]) > 1e-12 ||
          std::abs(v1[1] - basis.trace_d1_plus[j]) > 1e-12)
      {
        ok = false;
        detail = "trace j=" + std::to_string(j);
      }
    }
    report.line("basis-quadrature-traces", ok, detail);
  }

  {  // profile scalars
    const bool ok = profile.rho_minus > 0.0 && profile.rho_plus > profile.rho_minus &&
                    profile.l0_inverse > 0.0;
    report.line("profile-hypothesis", ok);
  }

  const AssembledOperators ops = assemble(basis, profile, k1, config.slip);

  {  // form symmetry and boundary rank
    const Eigen::MatrixXd b = ops.b_matrix(0.7, config.mu);
    const double asym = (b - b.transpose()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXd boundary = b - 0.7 * ops.K_dens - config.mu * ops.K_visc;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(boundary);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
    {
      // measured against the energy matrix, not the (possibly zero) remainder
      if (svd.singularValues()[i] > 1e-10 * b.cwiseAbs().maxCoeff())
      {
        ++rank;
      }
    }
    const bool ok = asym <= 1e-12 * b.cwiseAbs().maxCoeff() && rank <= 2;
    report.line("forms-symmetry-rank", ok);
  }

  {  // coercivity lower bound with random vectors
    bool ok = true;
    const double mu_c = mu_c_closed_form(k1, config.slip);
    const double mu_test = std::max(config.mu, 1.05 * mu_c);
    std::mt19937 rng(12345);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 32 && ok; ++trial)
    {
      Eigen::VectorXd u(n_modes);
      for (int i = 0; i < n_modes; ++i)
      {
        u[i] = dist(rng);
      }
      const double lhs = bilinear_value(ops, 0.3, mu_test, u, u);
      const double rhs = (mu_test - mu_c) * u.dot(ops.K_visc * u);
      ok = lhs >= rhs - 1e-9 * std::abs(rhs);
    }
    report.line("forms-coercivity-bound", ok);
  }

  {  // critical viscosity consistency
    bool ok = true;
    std::string detail;
    if (config.slip.xi_minus + config.slip.xi_plus > 0.0)
    {
      for (double k : {0.5 * k1, k1, 2.0 * k1})
      {
        const double cf = mu_c_closed_form(k, config.slip);
        const double num = mu_c_numeric(basis, k, config.slip).value;
        if (num > cf + 1e-9 || (cf - num) / cf > 1e-7)
        {
          ok = false;
          detail = "numeric/closed gap at k=" + std::to_string(k);
        }
        if (cf > mu_c_high_k_bound(k, config.slip))
        {
          ok = false;
          detail = "high-k bound at k=" + std::to_string(k);
        }
      }
      double prev = mu_c_closed_form(0.1, config.slip);
      for (double k = 0.6; k <= 10.0; k += 0.5)
      {
        const double cur = mu_c_closed_form(k, config.slip);
        if (!(cur < prev))
        {
          ok = false;
          detail = "monotonicity at k=" + std::to_string(k);
        }
        prev = cur;
      }
    }
    report.line("critical-viscosity", ok, detail);
  }

  const int m = std::min(5, n_modes - 2);
  {  // spectrum identity and B-orthogonality
    bool ok = true;
    std::string detail;
    try
    {
      const SpectrumSlice slice = gamma_spectrum(ops, 0.0, config.mu, m);
      for (int i = 0; i < m && ok; ++i)
      {
        const Eigen::VectorXd phi = slice.eigenvectors.col(i);
        const double lhs = slice.gammas[i] * bilinear_value(ops, 0.0, config.mu, phi, phi);
        const double rhs = phi.dot(ops.M_rho_prime * phi);
        if (std::abs(lhs - rhs) / rhs > 1e-9)
        {
          ok = false;
          detail = "EqPsi_nB-style identity, n=" + std::to_string(i + 1);
        }
        for (int j = 0; j < i; ++j)
        {
          const double cross =
              bilinear_value(ops, 0.0, config.mu, phi, slice.eigenvectors.col(j));
          if (std::abs(cross) > 1e-9 * bilinear_value(ops, 0.0, config.mu, phi, phi))
          {
            ok = false;
            detail = "B-orthogonality";
          }
        }
      }
      const double bound = lambda_upper_bound(profile, config.g);
      const auto mono = gamma_monotonicity_check(
          ops, config.mu, {0.0, 0.25 * bound, 0.5 * bound, bound}, m);
      if (!mono.all_strictly_decreasing)
      {
        ok = false;
        detail = "gamma not decreasing in lambda";
      }
    }
    catch (const SubcriticalViscosityError &)
    {
      ok = false;
      detail = "subcritical configuration";
    }
    report.line("spectrum-identities", ok, detail);
  }

  std::vector<GrowthMode> modes;
  {  // growth rates
    bool ok = true;
    std::string detail;
    try
    {
      modes = growth_sequence(ops, config.g, config.mu, std::min(config.m_modes, m),
                              config.tol);
      const double bound = lambda_upper_bound(profile, config.g) + 1e-10;
      for (std::size_t i = 0; i < modes.size(); ++i)
      {
        const auto &mode = modes[i];
        if (!(mode.lambda_n > 0.0) || mode.lambda_n > bound)
        {
          ok = false;
          detail = "lambda bound, n=" + std::to_string(i + 1);
        }
        if (mode.ode_residual + mode.bc_residual > 1e-6 || mode.continuity_residual > 1e-9)
        {
          ok = false;
          detail = "residuals, n=" + std::to_string(i + 1);
        }
        if (verify_characteristic_identity(mode, ops, config.g, config.mu) > 1e-8)
        {
          ok = false;
          detail = "energy identity, n=" + std::to_string(i + 1);
        }
      }
    }
    catch (const SubcriticalViscosityError &e)
    {
      ok = false;
      detail = std::string("subcritical: mu_c = ") + format_double(e.mu_c_estimate);
    }
    report.line("growth-rates", ok, detail);
  }

  {  // nonlinear constants and the Section-5 checks
    bool ok = true;
    std::string detail;
    try
    {
      const KSelection ks = k_selection_from(config);
      const DispersionCurve curve = sweep(profile, basis, config.g, config.mu, config.slip,
                                          ks, config.m_modes, config.tol);
      const NonlinearConstants nc =
          nonlinear_constants(curve, config.mu, config.slip, config.L);
      if (std::abs(nc.m1 + 1.0 / nc.m1 - 2.0 * nc.nu0) > 1e-12)
      {
        ok = false;
        detail = "m1 + 1/m1 != 2 nu0";
      }
      if (!(nc.nu0 > 1.0 && nc.nu0 < 1.5))
      {
        ok = false;
        detail = "nu0 out of (1, 3/2)";
      }
      const double lhs = nc.m1 * std::pow(config.mu / nc.m1 + nc.m2, 2) /
                         (2.0 * (config.mu - nc.mu_c_lattice));
      const double rhs = 2.0 * nc.nu0 * nc.m2;
      if (std::abs(lhs - rhs) / rhs > 1e-10)
      {
        ok = false;
        detail = "m2 balance identity";
      }
      if (!modes.empty() && modes.size() >= 2)
      {
        std::vector<double> weights(modes.size(), 0.0);
        weights[0] = 1.0;
        weights[1] = 1e-3;
        const auto comb = make_mode_combination(modes, weights, basis, config.L);
        if (!comb.normalized_ok)
        {
          ok = false;
          detail = "normalization condition";
        }
        const double t_delta = solve_t_delta(comb, 1e-6, 1e-2);
        if (std::abs(1e-6 * comb.f_m(t_delta) - 1e-2) > 1e-12 * 1e-2)
        {
          ok = false;
          detail = "T^delta residual";
        }
        const VelocityField field =
            VelocityField::from_modes({&modes[0]}, {1.0}, basis);
        const auto check = maximal_mode_inequality_check(
            field, profile, config.g, config.mu, config.slip, nc.capital_lambda, config.L);
        if (check.slack < -1e-10 * std::abs(check.rhs))
        {
          ok = false;
          detail = "maximal-mode inequality";
        }
      }
      report.line("nonlinear-constants", ok, detail);
    }
    catch (const ThresholdViolationError &)
    {
      report.line("nonlinear-constants (skipped: mu <= 3 mu_c)", true);
    }
  }

  return report.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Linear-stability solver for viscous Rayleigh-Taylor flow in the slab "
               "(-1,1) with Navier-slip walls"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  app.add_option("-c,--config", config_path, "JSON configuration file");
  app.add_option("--profile-kind", ov.profile_kind, "linear | exponential | polynomial");
  app.add_option("--profile-params", ov.profile_params, "profile parameters");
  app.add_option("--g", ov.g, "gravity constant");
  app.add_option("--mu", ov.mu, "viscosity coefficient");
  app.add_option("--L", ov.L, "horizontal period scale");
  app.add_option("--xi-minus", ov.xi_minus, "slip coefficient at x2 = -1");
  app.add_option("--xi-plus", ov.xi_plus, "slip coefficient at x2 = +1");
  app.add_option("--n-modes", ov.n_modes, "trial-space dimension");
  app.add_option("--tol", ov.tol, "root-solve tolerance");
  app.add_option("--m-modes", ov.m_modes, "growth rates per wave number");
  app.add_option("--lattice", ov.jmax, "wave-number lattice j = 1..j_max");
  app.add_option("--k-grid", ov.k_grid, "explicit wave-number grid");
  app.add_option("--output-dir", ov.output_dir, "output directory");

  auto *sc_mu_c = app.add_subcommand("mu-c", "critical viscosity tables");
  sc_mu_c->fallthrough();
  std::vector<double> k_list;
  std::vector<double> k_range;
  bool flag_closed = false, flag_numeric = false, flag_both = false;
  std::string mu_c_out;
  sc_mu_c->add_option("--k", k_list, "wave numbers");
  sc_mu_c->add_option("--k-range", k_range, "min max count")->expected(3);
  sc_mu_c->add_flag("--closed-form", flag_closed, "closed-form values only (default)");
  sc_mu_c->add_flag("--numeric", flag_numeric, "discrete maximization only");
  sc_mu_c->add_flag("--both", flag_both, "closed form and numeric side by side");
  sc_mu_c->add_option("--out", mu_c_out, "write CSV here instead of stdout");

  auto *sc_growth = app.add_subcommand("growth", "characteristic values at one wave number");
  sc_growth->fallthrough();
  double growth_k = 0.0;
  int n_modes_out = 0;
  bool write_profiles = false;
  std::string growth_out;
  sc_growth->add_option("--k", growth_k, "wave number (default 1/L)");
  sc_growth->add_option("--n-modes-out", n_modes_out, "number of modes to solve");
  sc_growth->add_flag("--write-profiles", write_profiles, "emit per-mode amplitude CSVs");
  sc_growth->add_option("--out", growth_out, "write CSV here instead of stdout");

  auto *sc_dispersion = app.add_subcommand("dispersion", "sweep the wave-number lattice");
  sc_dispersion->fallthrough();
  std::string prefix = "dispersion";
  sc_dispersion->add_option("--out-prefix", prefix, "basename for CSV/JSON outputs");

  auto *sc_constants = app.add_subcommand("constants", "nonlinear-instability constants");
  sc_constants->fallthrough();
  std::string constants_out;
  sc_constants->add_option("--out", constants_out, "write JSON here instead of stdout");

  auto *sc_verify =
      app.add_subcommand("verify", "run the invariant suite for this configuration");
  sc_verify->fallthrough();
  (void)sc_verify;

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try
  {
    const RunConfig config = resolve_config(config_path, ov);
    if (sc_mu_c->parsed())
    {
      if (!k_range.empty())
      {
        const int count = static_cast<int>(k_range[2]);
        if (count < 2 || !(k_range[0] > 0.0) || !(k_range[1] > k_range[0]))
        {
          throw std::invalid_argument("mu-c: --k-range expects 0 < min < max and count >= 2");
        }
        for (int i = 0; i < count; ++i)
        {
          k_list.push_back(k_range[0] + (k_range[1] - k_range[0]) * i / (count - 1));
        }
      }
      if (k_list.empty())
      {
        k_list.push_back(1.0 / config.L);
      }
      const bool numeric = flag_numeric || flag_both;
      const bool closed = flag_closed || flag_both || !flag_numeric;
      return cmd_mu_c(config, k_list, closed, numeric, mu_c_out);
    }
    if (sc_growth->parsed())
    {
      const double k = (growth_k != 0.0) ? growth_k : 1.0 / config.L;
      const int count = (n_modes_out > 0) ? n_modes_out : config.m_modes;
      return cmd_growth(config, k, count, write_profiles, growth_out);
    }
    if (sc_dispersion->parsed())
    {
      return cmd_dispersion(config, prefix);
    }
    if (sc_constants->parsed())
    {
      return cmd_constants(config, constants_out);
    }
    return cmd_verify(config);
  }
  catch (const SubcriticalViscosityError &e)
  {
    std::cerr << "error: " << e.what() << " [mu_c(k,Xi) = " << format_double(e.mu_c_estimate)
              << "]\n";
    return 4;
  }
  catch (const ThresholdViolationError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  catch (const NumericalError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  catch (const NoRootError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  catch (const ProfileError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch (const std::invalid_argument &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
