// SPDX-License-Identifier: Apache-2.0

#include "rtslip/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtslip
{

std::string format_double(double x)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string dispersion_to_csv(const DispersionCurve &curve)
{
  std::ostringstream out;
  out << "k,mu_c";
  for (int m = 1; m <= curve.m_modes; ++m)
  {
    out << ",lambda_" << m;
  }
  out << ",skipped\n";
  for (const auto &col : curve.columns)
  {
    out << format_double(col.k) << "," << format_double(col.mu_c);
    for (int m = 0; m < curve.m_modes; ++m)
    {
      out << ",";
      if (!col.skipped && m < static_cast<int>(col.modes.size()))
      {
        out << format_double(col.modes[m].lambda_n);
      }
    }
    out << "," << (col.skipped ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string dispersion_to_json(const DispersionCurve &curve, const RunConfig &config)
{
  std::ostringstream out;
  out << "{\n";
  {
    // Indent the config echo by two spaces.
    std::istringstream echo(config_to_json(config));
    std::string line;
    out << "  \"config\": ";
    bool first = true;
    while (std::getline(echo, line))
    {
      if (!first)
      {
        out << "\n  " << line;
      }
      else
      {
        out << line;
        first = false;
      }
    }
    out << ",\n";
  }
  out << "  \"columns\": [\n";
  for (std::size_t i = 0; i < curve.columns.size(); ++i)
  {
    const auto &col = curve.columns[i];
    out << "    {\"k\": " << format_double(col.k) << ", \"mu_c\": " << format_double(col.mu_c)
        << ", \"skipped\": " << (col.skipped ? "true" : "false") << ", \"lambda\": [";
    const auto ls = col.lambdas();
    for (std::size_t m = 0; m < ls.size(); ++m)
    {
      out << (m ? ", " : "") << format_double(ls[m]);
    }
    out << "]}" << (i + 1 < curve.columns.size() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

std::string growth_table_csv(const std::vector<GrowthMode> &modes)
{
  std::ostringstream out;
  out << "n,lambda_n,fixed_point_residual,ode_residual,bc_residual\n";
  for (const auto &m : modes)
  {
    out << m.n << "," << format_double(m.lambda_n) << ","
        << format_double(m.fixed_point_residual) << "," << format_double(m.ode_residual)
        << "," << format_double(m.bc_residual) << "\n";
  }
  return out.str();
}

std::string mode_profile_csv(const ModeShape &shape, const Eigen::VectorXd &points)
{
  std::ostringstream out;
  out << "x2,phi,dphi,omega,theta,q\n";
  for (int i = 0; i < points.size(); ++i)
  {
    const double x = points[i];
    out << format_double(x) << "," << format_double(shape.phi(x)) << ","
        << format_double(shape.phi(x, 1)) << "," << format_double(shape.omega(x)) << ","
        << format_double(shape.theta(x)) << "," << format_double(shape.q_amp(x)) << "\n";
  }
  return out.str();
}

std::string constants_to_json(const NonlinearConstants &c, const RunConfig &config)
{
  std::ostringstream out;
  out << "{\n";
  out << "  \"capital_lambda\": " << format_double(c.capital_lambda) << ",\n";
  out << "  \"capital_lambda_note\": \"supremum over the infinite lattice, "
         "approximated on the swept window\",\n";
  out << "  \"argmax_k\": " << format_double(c.argmax_k) << ",\n";
  out << "  \"mu_c_lattice\": " << format_double(c.mu_c_lattice) << ",\n";
  out << "  \"mu_c_sup_all_k\": " << format_double(c.mu_c_sup_all_k) << ",\n";
  out << "  \"varpi0\": " << format_double(c.varpi0) << ",\n";
  out << "  \"nu0\": " << format_double(c.nu0) << ",\n";
  out << "  \"m1\": " << format_double(c.m1) << ",\n";
  out << "  \"m2\": " << format_double(c.m2) << ",\n";
  out << "  \"n_split_found\": " << (c.n_split_found ? "true" : "false") << ",\n";
  if (c.n_split_found)
  {
    out << "  \"k0\": " << format_double(c.k0) << ",\n";
    out << "  \"n_split\": " << c.n_split << ",\n";
  }
  out << "  \"mu\": " << format_double(config.mu) << ",\n";
  out << "  \"L\": " << format_double(config.L) << "\n";
  out << "}\n";
  return out.str();
}

void write_file(const std::string &path, const std::string &content)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out)
  {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

}  // namespace rtslip
