#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Special functions for the model catalog. All functions are pure.
namespace tcs::specfun {

/// Generalized Laguerre polynomial L_n^(eta)(x) by forward recurrence.
double laguerre(int n, double eta, double x);

/// L_0^(eta)(x) .. L_nmax^(eta)(x) in one pass.
std::vector<double> laguerre_sequence(int nmax, double eta, double x);

/// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

/// log Gamma(x) for x > 0; throws Error(domain) otherwise.
double ln_gamma(double x);

/// Spherical Bessel function j_ell(x), x >= 0.
double spherical_bessel_j(int ell, double x);

/// Bessel J_nu(x) for half-integer nu = ell + 1/2 > 0 and x > 0.
double bessel_j_half(double nu, double x);

/// (E_n)! = E_1 E_2 ... E_n with (E_0)! = 1; energies[k] holds E_k.
double generalized_factorial(std::span<const double> energies, std::size_t n);

}  // namespace tcs::specfun
