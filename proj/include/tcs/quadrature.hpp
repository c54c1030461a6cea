#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tcs {

/// Nodes and weights such that  int w(x) g(x) dx ~= sum_i weights[i] g(nodes[i]).
/// `weight` is the weight function folded into the weights; empty means w == 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::function<double(double)> weight;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }

  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Gauss rule from the recurrence coefficients of the orthonormal polynomials
/// (diagonal alpha_0..alpha_{n-1}, off-diagonal beta_1..beta_{n-1}) and the
/// zeroth moment. Golub-Welsch start, Newton polish, Christoffel weights.
QuadratureRule gauss_from_recurrence(std::span<const double> diag, std::span<const double> offdiag,
                                     double mu0);

QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// `panels` equal panels on [a, b], each with an `order`-point Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels, std::size_t order);

/// Weight x^alpha exp(-x/scale) on [0, inf).
QuadratureRule generalized_gauss_laguerre(std::size_t n, double alpha, double scale = 1.0);

enum class QuadratureKind {
  generalized_laguerre,  // weight E^exponent exp(-E/scale)
  uniform,               // composite Gauss-Legendre on [0, length], unit weight
  uniform_momentum,      // composite Gauss-Legendre in k on [0, length], mapped to E = k^2/2
};

struct QuadratureRequest {
  QuadratureKind kind = QuadratureKind::generalized_laguerre;
  std::size_t order = 64;
  double exponent = 0.0;
  double scale = 1.0;
  double length = 1.0;
  std::size_t panels = 1;
};

QuadratureRule quadrature_for_measure(const QuadratureRequest& request);

}  // namespace tcs
