// SPDX-License-Identifier: Apache-2.0
//
// Independent finite-difference oracles for cross-checking the spectral
// solver. These deliberately share no code with the library: uniform-grid
// second differences, banded Cholesky, power iteration.

#ifndef RTSLIP_TESTS_FD_ORACLE_HPP
#define RTSLIP_TESTS_FD_ORACLE_HPP

#include <functional>

namespace fd_oracle
{

/// Largest eigenvalue gamma_1 of the pencil
///   [lam (k^2 rho - (rho phi')') + mu (phi'''' - 2k^2 phi'' + k^4 phi)] gamma = rho' phi
/// with the supported-plate conditions phi(+-1) = 0, phi''(+-1) = 0 (zero
/// slip), discretized by central differences on N subintervals.
double gamma_max(const std::function<double(double)> &rho,
                 const std::function<double(double)> &rho_prime, double k, double mu,
                 double lambda, int n_intervals);

/// Root of g k^2 gamma_1(lambda) = lambda by bisection on [0, upper].
double lambda_1(const std::function<double(double)> &rho,
                const std::function<double(double)> &rho_prime, double k, double mu, double g,
                double upper, int n_intervals);

/// Discrete maximum of the boundary/interior quotient
///   (xi_- |phi'(-1)|^2 + xi_+ |phi'(1)|^2) / int(phi''^2 + 2k^2 phi'^2 + k^4 phi^2)
/// over grid functions vanishing at the walls, with ghost nodes carrying the
/// free second derivative at the ends.
double mu_c_quotient(double k, double xi_minus, double xi_plus, int n_intervals);

}  // namespace fd_oracle

#endif  // RTSLIP_TESTS_FD_ORACLE_HPP
