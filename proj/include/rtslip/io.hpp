// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_IO_HPP
#define RTSLIP_IO_HPP

#include <string>
#include <vector>

#include "rtslip/config.hpp"
#include "rtslip/dispersion.hpp"
#include "rtslip/growth.hpp"

namespace rtslip
{

/// 17-significant-digit representation; round-trips exactly.
std::string format_double(double x);

/// RFC-4180 style, header row, LF endings.
/// Columns: k, mu_c, lambda_1..lambda_m, skipped.
std::string dispersion_to_csv(const DispersionCurve &curve);

/// JSON document embedding the configuration echo.
std::string dispersion_to_json(const DispersionCurve &curve, const RunConfig &config);

/// Columns: n, lambda_n, fixed_point_residual, ode_residual, bc_residual.
std::string growth_table_csv(const std::vector<GrowthMode> &modes);

/// Columns: x2, phi, dphi, omega, theta, q.
std::string mode_profile_csv(const ModeShape &shape, const Eigen::VectorXd &points);

std::string constants_to_json(const NonlinearConstants &c, const RunConfig &config);

void write_file(const std::string &path, const std::string &content);

}  // namespace rtslip

#endif  // RTSLIP_IO_HPP
