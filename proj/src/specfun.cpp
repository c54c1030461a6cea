#include "tcs/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tcs/error.hpp"

namespace tcs::specfun {

double laguerre(int n, double eta, double x) {
  if (n < 0) throw Error(ErrorCode::domain, "laguerre: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + eta - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + eta - x) * cur - (k + eta) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_sequence(int nmax, double eta, double x) {
  if (nmax < 0) throw Error(ErrorCode::domain, "laguerre_sequence: negative degree");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  out[0] = 1.0;
  if (nmax >= 1) out[1] = 1.0 + eta - x;
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = ((2.0 * k + 1.0 + eta - x) * out[k] - (k + eta) * out[k - 1]) / (k + 1.0);
  }
  return out;
}

double hermite(int n, double x) {
  if (n < 0) throw Error(ErrorCode::domain, "hermite: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::domain, "ln_gamma: argument must be positive and finite");
  }
  // Lanczos, g = 7, nine terms.
  static constexpr std::array<double, 9> coeffs = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  const double xm = x - 1.0;
  double series = coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i) series += coeffs[i] / (xm + static_cast<double>(i));
  const double t = xm + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(series);
}

namespace {

double spherical_bessel_series(int ell, double x) {
  // x^ell / (2 ell + 1)!! * sum_k (-x^2/2)^k / (k! (2ell+3)(2ell+5)...(2ell+2k+1))
  double lead = 1.0;
  for (int k = 1; k <= ell; ++k) lead *= x / (2.0 * k + 1.0);
  double term = 1.0;
  double sum = 1.0;
  const double h = -0.5 * x * x;
  for (int k = 1; k < 200; ++k) {
    term *= h / (k * (2.0 * ell + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

double spherical_bessel_miller(int ell, double x) {
  const int start = ell + 30 + static_cast<int>(std::sqrt(40.0 * (ell + 1)));
  double upper = 0.0;
  double cur = 1e-30;
  double at_ell = 0.0;
  double at_one = 0.0;
  double sum = (2.0 * start + 1.0) * cur * cur;
  for (int k = start; k > 0; --k) {
    const double lower = (2.0 * k + 1.0) / x * cur - upper;
    upper = cur;
    cur = lower;
    const int idx = k - 1;
    sum += (2.0 * idx + 1.0) * cur * cur;
    if (idx == ell) at_ell = cur;
    if (idx == 1) at_one = cur;
    if (std::abs(cur) > 1e150) {
      constexpr double s = 1e-150;
      cur *= s;
      upper *= s;
      at_ell *= s;
      at_one *= s;
      sum *= s * s;
    }
  }
  // cur is now the unnormalized j_0. The sum rule fixes the magnitude, the
  // larger of the exact j_0 / j_1 fixes the sign.
  const double scale = 1.0 / std::sqrt(sum);
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double ref = std::abs(j0) >= std::abs(j1) ? j0 : j1;
  const double mine = std::abs(j0) >= std::abs(j1) ? cur : at_one;
  const double sign = (ref >= 0.0) == (mine >= 0.0) ? 1.0 : -1.0;
  return sign * at_ell * scale;
}

}  // namespace

double spherical_bessel_j(int ell, double x) {
  if (ell < 0 || x < 0.0) throw Error(ErrorCode::domain, "spherical_bessel_j: need ell >= 0, x >= 0");
  if (x == 0.0) return ell == 0 ? 1.0 : 0.0;
  if (x < 1.0) return spherical_bessel_series(ell, x);
  const double j0 = std::sin(x) / x;
  if (ell == 0) return j0;
  if (x < ell) return spherical_bessel_miller(ell, x);
  double prev = j0;
  double cur = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int k = 1; k < ell; ++k) {
    const double next = (2.0 * k + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_j_half(double nu, double x) {
  const double ell = nu - 0.5;
  if (ell < -1e-12 || std::abs(ell - std::round(ell)) > 1e-12) {
    throw Error(ErrorCode::domain, "bessel_j_half: order must be ell + 1/2 with integer ell >= 0");
  }
  if (!(x > 0.0)) throw Error(ErrorCode::domain, "bessel_j_half: argument must be positive");
  return std::sqrt(2.0 * x / std::numbers::pi) *
         spherical_bessel_j(static_cast<int>(std::lround(ell)), x);
}

double generalized_factorial(std::span<const double> energies, std::size_t n) {
  if (n == 0) return 1.0;
  if (n >= energies.size()) {
    throw Error(ErrorCode::domain, "generalized_factorial: energies not defined up to index " +
                                       std::to_string(n));
  }
  double prod = 1.0;
  for (std::size_t k = 1; k <= n; ++k) prod *= energies[k];
  return prod;
}

}  // namespace tcs::specfun
