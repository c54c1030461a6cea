#include "tcs/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "tcs/error.hpp"
#include "tcs/specfun.hpp"

namespace tcs {

namespace {

struct PolyValue {
  double value;
  double derivative;
};

// Degree-n member of the orthonormal family up to a constant factor, with
// its derivative. Only its zeros are used.
PolyValue scaled_top(std::span<const double> diag, std::span<const double> offdiag, double x) {
  const std::size_t n = diag.size();
  double p_prev = 0.0, p = 1.0;
  double dp_prev = 0.0, dp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double beta_k = k == 0 ? 0.0 : offdiag[k - 1];
    const double beta_next = k + 1 < n ? offdiag[k] : 1.0;
    const double p_next = ((x - diag[k]) * p - beta_k * p_prev) / beta_next;
    const double dp_next = (p + (x - diag[k]) * dp - beta_k * dp_prev) / beta_next;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

double christoffel_weight(std::span<const double> diag, std::span<const double> offdiag, double mu0,
                          double x) {
  const std::size_t n = diag.size();
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(mu0);
  double sum = p * p;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double beta_k = k == 0 ? 0.0 : offdiag[k - 1];
    const double p_next = ((x - diag[k]) * p - beta_k * p_prev) / offdiag[k];
    p_prev = p;
    p = p_next;
    sum += p * p;
  }
  return 1.0 / sum;
}

}  // namespace

QuadratureRule gauss_from_recurrence(std::span<const double> diag, std::span<const double> offdiag,
                                     double mu0) {
  const std::size_t n = diag.size();
  if (n == 0 || offdiag.size() + 1 < n) {
    throw Error(ErrorCode::domain, "gauss_from_recurrence: inconsistent recurrence lengths");
  }
  Eigen::VectorXd d(n), e(n > 1 ? n - 1 : 1);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e.head(n - 1), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::domain, "gauss_from_recurrence: tridiagonal eigensolver failed");
  }

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    for (int it = 0; it < 4; ++it) {
      const auto [f, df] = scaled_top(diag, offdiag.first(n - 1), x);
      if (df == 0.0 || !std::isfinite(f / df)) break;
      const double step = f / df;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = christoffel_weight(diag, offdiag.first(n - 1), mu0, x);
    if (!std::isfinite(rule.weights[i])) {
      throw Error(ErrorCode::domain, "gauss_from_recurrence: weight overflow at order " +
                                         std::to_string(n));
    }
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  std::vector<double> diag(n, 0.0), off(n > 0 ? n - 1 : 0);
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    off[k - 1] = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  QuadratureRule rule = gauss_from_recurrence(diag, off, 2.0);
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order) {
  if (panels == 0 || order == 0) throw Error(ErrorCode::domain, "composite rule needs panels and order");
  const QuadratureRule base = gauss_legendre(order, 0.0, 1.0);
  const double h = (b - a) / static_cast<double>(panels);
  QuadratureRule rule;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = a + h * static_cast<double>(p);
    for (std::size_t i = 0; i < order; ++i) {
      rule.nodes.push_back(left + h * base.nodes[i]);
      rule.weights.push_back(h * base.weights[i]);
    }
  }
  return rule;
}

QuadratureRule generalized_gauss_laguerre(std::size_t n, double alpha, double scale) {
  if (!(alpha > -1.0) || !(scale > 0.0)) {
    throw Error(ErrorCode::domain, "generalized_gauss_laguerre: need alpha > -1 and scale > 0");
  }
  if (n > 200) throw Error(ErrorCode::domain, "generalized_gauss_laguerre: order above 200");
  std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k < n; ++k) diag[k] = 2.0 * static_cast<double>(k) + alpha + 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    off[k - 1] = std::sqrt(kk * (kk + alpha));
  }
  QuadratureRule rule = gauss_from_recurrence(diag, off, std::exp(specfun::ln_gamma(alpha + 1.0)));
  const double factor = std::pow(scale, alpha + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] *= scale;
    rule.weights[i] *= factor;
  }
  rule.weight = [alpha, scale](double x) { return std::pow(x, alpha) * std::exp(-x / scale); };
  return rule;
}

QuadratureRule quadrature_for_measure(const QuadratureRequest& request) {
  switch (request.kind) {
    case QuadratureKind::generalized_laguerre:
      return generalized_gauss_laguerre(request.order, request.exponent, request.scale);
    case QuadratureKind::uniform:
      return composite_gauss_legendre(0.0, request.length, request.panels, request.order);
    case QuadratureKind::uniform_momentum: {
      QuadratureRule k_rule = composite_gauss_legendre(0.0, request.length, request.panels, request.order);
      for (std::size_t i = 0; i < k_rule.size(); ++i) {
        const double k = k_rule.nodes[i];
        k_rule.nodes[i] = 0.5 * k * k;
        k_rule.weights[i] *= k;  // dE = k dk
      }
      return k_rule;
    }
  }
  throw Error(ErrorCode::unsupported_kind, "quadrature_for_measure: unsupported kind");
}

}  // namespace tcs
