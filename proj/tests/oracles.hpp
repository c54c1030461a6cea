#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library; closed forms are typed in from their formulas and special
// functions use explicit series.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double factorial(int n) { return std::tgamma(n + 1.0); }

// L_n^(eta)(x) = sum_k (-1)^k binom(n + eta, n - k) x^k / k!, binomials as plain products.
inline double laguerre(int n, double eta, double x) {
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) {
    long double binom = 1.0L;
    for (int j = 1; j <= n - k; ++j) binom *= (static_cast<long double>(eta) + k + j) / j;
    long double xk = 1.0L;
    for (int j = 1; j <= k; ++j) xk *= static_cast<long double>(x) / j;
    sum += (k % 2 ? -1.0L : 1.0L) * binom * xk;
  }
  return static_cast<double>(sum);
}

// H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!)
inline double hermite(int n, double x) {
  long double sum = 0.0L;
  for (int m = 0; 2 * m <= n; ++m) {
    sum += (m % 2 ? -1.0L : 1.0L) * std::pow(2.0L * x, n - 2 * m) /
           (std::tgamma(static_cast<long double>(m + 1)) * std::tgamma(static_cast<long double>(n - 2 * m + 1)));
  }
  return static_cast<double>(sum * std::tgamma(static_cast<long double>(n + 1)));
}

// J_nu(x) by its ascending series, long double accumulation. Cancels for large x.
inline double bessel_j(double nu, double x) {
  long double sum = 0.0L;
  const long double h = 0.5L * x;
  long double term = std::pow(h, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu + 1));
  for (int k = 0; k < 300; ++k) {
    sum += term;
    term *= -h * h / ((k + 1.0L) * (k + 1.0L + nu));
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 5) break;
  }
  return static_cast<double>(sum);
}

// j_ell(x) from the terminating Hankel expansion, a_k = (ell + k)! / (2^k k! (ell - k)!).
// Exact for any x but cancels for x << ell.
inline double spherical_bessel_hankel(int ell, double x) {
  auto a = [ell](int k) {
    long double v = 1.0L;
    for (int j = ell - k + 1; j <= ell + k; ++j) v *= j;
    for (int j = 1; j <= k; ++j) v /= 2.0L * j;
    return v;
  };
  const long double phase = static_cast<long double>(x) - ell * std::numbers::pi_v<long double> / 2.0L;
  long double ps = 0.0L, pc = 0.0L;
  for (int k = 0; 2 * k <= ell; ++k) ps += (k % 2 ? -1.0L : 1.0L) * a(2 * k) / std::pow(static_cast<long double>(x), 2 * k);
  for (int k = 0; 2 * k + 1 <= ell; ++k) {
    pc += (k % 2 ? -1.0L : 1.0L) * a(2 * k + 1) / std::pow(static_cast<long double>(x), 2 * k + 1);
  }
  return static_cast<double>((std::sin(phase) * ps + std::cos(phase) * pc) / x);
}

// J_{ell+1/2}(x): series for small x, Hankel form otherwise.
inline double bessel_j_half(int ell, double x) {
  if (x <= 12.0) return bessel_j(ell + 0.5, x);
  return std::sqrt(2.0 * x / std::numbers::pi) * spherical_bessel_hankel(ell, x);
}

// Dense (size x size) tridiagonal Hamiltonian.
inline Eigen::MatrixXd dense_h(const std::vector<double>& a, const std::vector<double>& b, int size) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (int n = 0; n < size; ++n) {
    h(n, n) = a[static_cast<std::size_t>(n)];
    if (n + 1 < size) h(n, n + 1) = h(n + 1, n) = b[static_cast<std::size_t>(n)];
  }
  return h;
}

// Dense forward-shift operator on indices 0..rows-1: A(n, n) = c_n, A(n-1, n) = d_n.
inline Eigen::MatrixXd dense_a(const std::vector<double>& c, const std::vector<double>& d, int rows) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, rows);
  for (int n = 0; n < rows; ++n) {
    m(n, n) = c[static_cast<std::size_t>(n)];
    if (n > 0) m(n - 1, n) = d[static_cast<std::size_t>(n)];
  }
  return m;
}

// Inverse of an upper-triangular matrix by column back substitution.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> upper_inverse(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& u) {
  const Eigen::Index n = u.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> inv =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index row = col; row >= 0; --row) {
      Scalar s = row == col ? Scalar(1) : Scalar(0);
      for (Eigen::Index k = row + 1; k <= col; ++k) s -= u(row, k) * inv(k, col);
      inv(row, col) = s / u(row, row);
    }
  }
  return inv;
}

// Q_n(z) from A|z) = z|z) written as the bidiagonal solve c_n Q_n + d_{n+1} Q_{n+1} = z Q_n.
inline std::vector<cplx> q_brute(const std::vector<double>& c, const std::vector<double>& d, cplx z, int N) {
  std::vector<cplx> q(static_cast<std::size_t>(N) + 1);
  q[0] = 1.0;
  for (int n = 0; n < N; ++n) {
    q[static_cast<std::size_t>(n) + 1] = (z - c[static_cast<std::size_t>(n)]) * q[static_cast<std::size_t>(n)] /
                                         d[static_cast<std::size_t>(n) + 1];
  }
  return q;
}

// Morse model constants and the ground state sqrt(alpha/Gamma(2D)) y^D e^{-y/2}.
inline double morse_D(double V0, double alpha) { return std::sqrt(2.0 * V0) / alpha - 0.5; }
inline double morse_y(double V0, double alpha, double x) { return std::sqrt(8.0 * V0) / alpha * std::exp(-alpha * x); }
inline double morse_ground(double V0, double alpha, double x) {
  const double D = morse_D(V0, alpha), y = morse_y(V0, alpha, x);
  return std::sqrt(alpha / std::tgamma(2.0 * D)) * std::pow(y, D) * std::exp(-0.5 * y);
}
inline double morse_phi(int n, double V0, double alpha, double gamma, double x) {
  const double y = morse_y(V0, alpha, x);
  return std::sqrt(factorial(n) * alpha / std::tgamma(n + 2.0 * gamma + 1.0)) * std::pow(y, gamma + 0.5) *
         std::exp(-0.5 * y) * laguerre(n, 2.0 * gamma, y);
}

// Laguerre basis in y = lambda r.
inline double radial_phi(int n, int ell, double lambda, double r) {
  const double nu = ell + 0.5, y = lambda * r;
  return std::sqrt(factorial(n) * 2.0 * lambda / std::tgamma(n + nu + 1.0)) * std::pow(y, nu + 0.5) *
         std::exp(-0.5 * y * y) * laguerre(n, nu, y * y);
}

inline double ho_phi(int n, double omega, double x) {
  return std::pow(omega / std::numbers::pi, 0.25) * std::exp(-0.5 * omega * x * x) /
         std::sqrt(std::pow(2.0, n) * factorial(n)) * hermite(n, std::sqrt(omega) * x);
}

// 1D oscillator coherent state at time t, generating-function closed form.
inline cplx ho_coherent(double omega, cplx z, double x, double t) {
  const cplx u = z * std::polar(1.0, -omega * t) / std::sqrt(2.0 * omega);
  return std::pow(omega / std::numbers::pi, 0.25) *
         std::exp(-0.5 * omega * x * x - std::norm(z) / (2.0 * omega) + 2.0 * std::sqrt(omega) * x * u - u * u);
}

// Radial oscillator: phi_0(r; lambda0) evolved, with signed sqrt(tau).
inline cplx radial_ho_psi(double omega, int ell, double lambda0, double r, double t) {
  const double nu = ell + 0.5;
  const double root_tau = (lambda0 * lambda0 - omega) / (lambda0 * lambda0 + omega);
  const double tau = root_tau * root_tau;
  const cplx y = root_tau * std::exp(cplx(0.0, -2.0 * omega * t));
  return std::sqrt(2.0 * std::sqrt(omega) / std::tgamma(nu + 1.0)) * std::pow(1.0 - tau, 0.5 * (1.0 + nu)) /
         std::pow(1.0 - y, 1.0 + nu) * std::pow(std::sqrt(omega) * r, ell + 1.0) *
         std::exp(-0.5 * omega * r * r * (1.0 + y) / (1.0 - y));
}

inline double radial_ho_rbar(double omega, int ell, double lambda0, double t) {
  const double nu = ell + 0.5;
  const double K = std::tgamma(nu + 1.5) / std::tgamma(nu + 1.0);
  const double l2 = lambda0 * lambda0, s = std::sin(omega * t), c = std::cos(omega * t);
  return K * std::sqrt((l2 * l2 * s * s + omega * omega * c * c) / (omega * omega * l2));
}

// Radial free particle, beta = lambda/sqrt(1 + i lambda^2 t).
inline cplx free_psi(int ell, double lambda, double r, double t) {
  const double nu = ell + 0.5;
  const cplx beta = lambda / std::sqrt(cplx(1.0, lambda * lambda * t));
  return std::pow(beta / lambda, nu + 1.0) * std::sqrt(2.0 * beta / std::tgamma(nu + 1.0)) *
         std::pow(beta * r, ell + 1.0) * std::exp(-0.5 * beta * beta * r * r);
}

inline double free_rbar(int ell, double lambda, double t) {
  const double nu = ell + 0.5;
  const double K = std::tgamma(nu + 1.5) / std::tgamma(nu + 1.0);
  return K * std::sqrt((1.0 + std::pow(lambda, 4) * t * t) / (lambda * lambda));
}

// Trapezoid rule on a uniform grid.
template <class F>
double trapezoid(F&& f, double lo, double hi, int points) {
  const double h = (hi - lo) / (points - 1);
  double s = 0.0;
  for (int i = 0; i < points; ++i) s += (i == 0 || i == points - 1 ? 0.5 : 1.0) * f(lo + h * i);
  return s * h;
}

}  // namespace oracle
