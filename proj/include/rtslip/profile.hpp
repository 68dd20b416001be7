// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_PROFILE_HPP
#define RTSLIP_PROFILE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace rtslip
{

enum class ProfileKind
{
  linear,       // rho0 = a + b x2
  exponential,  // rho0 = a exp(b x2)
  polynomial    // rho0 = sum params[i] x2^i
};

const char *to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// Equilibrium density rho0 on [-1,1] with rho0 > 0 and rho0' > 0 everywhere.
/// Immutable after construction; evaluators are pure.
struct DensityProfile
{
  ProfileKind kind = ProfileKind::linear;
  std::vector<double> params;

  double rho_minus = 0.0;   // rho0(-1)
  double rho_plus = 0.0;    // rho0(+1)
  double l0_inverse = 0.0;  // sup |rho0'/rho0|

  double rho(double x2) const;
  double rho_prime(double x2) const;
};

/// Validates positivity of rho0 and rho0' on a 2001-point grid and computes
/// the derived scalars. Throws ProfileError naming the violating abscissa.
DensityProfile make_profile(ProfileKind kind, const std::vector<double> &params);

/// Uniform bound sqrt(g / L0) on every characteristic value. Requires g > 0.
double lambda_upper_bound(const DensityProfile &profile, double g);

}  // namespace rtslip

#endif  // RTSLIP_PROFILE_HPP
