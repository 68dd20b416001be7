// SPDX-License-Identifier: Apache-2.0

#ifndef RTSLIP_ERRORS_HPP
#define RTSLIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rtslip
{

/// Equilibrium density fails the positivity hypothesis somewhere on [-1,1].
class ProfileError : public std::runtime_error
{
public:
  explicit ProfileError(const std::string &what) : std::runtime_error(what) {}
};

/// Requested an eigenvalue computation with mu <= mu_c(k, Xi).
class SubcriticalViscosityError : public std::runtime_error
{
public:
  SubcriticalViscosityError(const std::string &what, double mu_c)
    : std::runtime_error(what), mu_c_estimate(mu_c)
  {
  }
  double mu_c_estimate;
};

/// mu <= 3 mu_c(Xi): the nonlinear constants are undefined in this regime.
class ThresholdViolationError : public std::runtime_error
{
public:
  explicit ThresholdViolationError(const std::string &what) : std::runtime_error(what) {}
};

/// Root bracketing failed; signals a discretization inconsistency.
class NoRootError : public std::runtime_error
{
public:
  explicit NoRootError(const std::string &what) : std::runtime_error(what) {}
};

/// Factorization / eigensolver breakdown.
class NumericalError : public std::runtime_error
{
public:
  explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace rtslip

#endif  // RTSLIP_ERRORS_HPP
