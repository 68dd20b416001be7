// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_CONFIG_HPP
#define RTSLIP_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "rtslip/forms.hpp"
#include "rtslip/profile.hpp"

namespace rtslip
{

/// Flat run configuration. JSON file keys match the field names; unknown
/// keys are rejected. CLI flags override file values.
struct RunConfig
{
  ProfileKind profile_kind = ProfileKind::linear;
  std::vector<double> profile_params = {2.0, 1.0};

  double g = 1.0;
  double mu = 1.0;
  double L = 1.0;
  SlipCoefficients slip;

  int n_modes = 48;
  double tol = 1e-10;

  std::optional<int> k_lattice_jmax;
  std::optional<std::vector<double>> k_grid;
  int m_modes = 8;

  std::string output_dir = ".";
};

/// Parses and validates (positivity constraints re-checked here). Throws
/// std::invalid_argument with the offending key on any violation.
RunConfig parse_config_json(const std::string &text);
RunConfig load_config_file(const std::string &path);

/// Canonical serialization: fixed key order, numbers with 17 significant
/// digits, LF line endings. parse(config_to_json(c)) == c.
std::string config_to_json(const RunConfig &config);

bool operator==(const RunConfig &a, const RunConfig &b);

}  // namespace rtslip

#endif  // RTSLIP_CONFIG_HPP
