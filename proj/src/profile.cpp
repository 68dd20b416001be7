// SPDX-License-Identifier: Apache-2.0

#include "rtslip/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "rtslip/errors.hpp"

namespace rtslip
{

namespace
{

constexpr int kValidationPoints = 2001;

double eval_poly(const std::vector<double> &c, double x)
{
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
  {
    v = v * x + *it;
  }
  return v;
}

double eval_poly_derivative(const std::vector<double> &c, double x)
{
  double v = 0.0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i)
  {
    v = v * x + i * c[i];
  }
  return v;
}

// Golden-section refinement of a maximum bracketed by grid neighbours.
double golden_max(const std::function<double(double)> &f, double a, double b, double tol)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol)
  {
    if (fc > fd)
    {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
    else
    {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double m = 0.5 * (a + b);
  return std::max({f(m), fc, fd});
}

}  // namespace

const char *to_string(ProfileKind kind)
{
  switch (kind)
  {
    case ProfileKind::linear:
      return "linear";
    case ProfileKind::exponential:
      return "exponential";
    case ProfileKind::polynomial:
      return "polynomial";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name)
{
  if (name == "linear")
  {
    return ProfileKind::linear;
  }
  if (name == "exponential")
  {
    return ProfileKind::exponential;
  }
  if (name == "polynomial")
  {
    return ProfileKind::polynomial;
  }
  throw std::invalid_argument("unknown profile kind '" + std::string(name) + "'");
}

double DensityProfile::rho(double x2) const
{
  switch (kind)
  {
    case ProfileKind::linear:
      return params[0] + params[1] * x2;
    case ProfileKind::exponential:
      return params[0] * std::exp(params[1] * x2);
    case ProfileKind::polynomial:
      return eval_poly(params, x2);
  }
  return 0.0;
}

double DensityProfile::rho_prime(double x2) const
{
  switch (kind)
  {
    case ProfileKind::linear:
      return params[1];
    case ProfileKind::exponential:
      return params[0] * params[1] * std::exp(params[1] * x2);
    case ProfileKind::polynomial:
      return eval_poly_derivative(params, x2);
  }
  return 0.0;
}

DensityProfile make_profile(ProfileKind kind, const std::vector<double> &params)
{
  const std::size_t expected = (kind == ProfileKind::polynomial) ? 2 : 2;
  if (params.size() < expected)
  {
    throw std::invalid_argument("make_profile: not enough parameters");
  }
  DensityProfile profile;
  profile.kind = kind;
  profile.params = params;

  // Dense sampling; a sign change of a C^1 profile at desk scale cannot hide
  // between nodes of this grid.
  for (int i = 0; i < kValidationPoints; ++i)
  {
    const double x = -1.0 + 2.0 * i / (kValidationPoints - 1);
    const double r = profile.rho(x);
    const double rp = profile.rho_prime(x);
    if (!(r > 0.0))
    {
      std::ostringstream msg;
      msg << "profile invalid: rho0(" << x << ") = " << r << " is not positive";
      throw ProfileError(msg.str());
    }
    if (!(rp > 0.0))
    {
      std::ostringstream msg;
      msg << "profile invalid: rho0'(" << x << ") = " << rp << " is not positive";
      throw ProfileError(msg.str());
    }
  }

  profile.rho_minus = profile.rho(-1.0);
  profile.rho_plus = profile.rho(1.0);

  const auto ratio = [&profile](double x) { return profile.rho_prime(x) / profile.rho(x); };
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i < kValidationPoints; ++i)
  {
    const double x = -1.0 + 2.0 * i / (kValidationPoints - 1);
    const double v = ratio(x);
    if (v > best)
    {
      best = v;
      best_i = i;
    }
  }
  const double h = 2.0 / (kValidationPoints - 1);
  const double lo = std::max(-1.0, -1.0 + best_i * h - h);
  const double hi = std::min(1.0, -1.0 + best_i * h + h);
  profile.l0_inverse = std::max(best, golden_max(ratio, lo, hi, 1e-10));
  return profile;
}

double lambda_upper_bound(const DensityProfile &profile, double g)
{
  if (!(g > 0.0))
  {
    throw std::invalid_argument("lambda_upper_bound: g must be positive");
  }
  return std::sqrt(g * profile.l0_inverse);
}

}  // namespace rtslip
