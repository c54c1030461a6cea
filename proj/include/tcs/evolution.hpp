#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcs/coherent.hpp"
#include "tcs/quadrature.hpp"
#include "tcs/tridiag.hpp"

namespace tcs {

struct DiscreteLevel {
  double energy;
  double weight;  // Omega_mu
};

struct ContinuousPart {
  std::function<double(double)> density;  // Omega(E) on [0, inf)
  QuadratureRule rule;                     // plain rule used to synthesize wavefunctions
  QuadratureRule gate_rule;                // rule for the orthonormality gate; may carry a weight
  std::function<double(double E, double x)> eigenfunction;  // <x|E>
  /// Optional: a synthesis rule adequate for time t on |x| <= xmax.
  std::function<QuadratureRule(double t, double xmax)> rule_for;

  /// int Omega(E) g(E) dE under `r`; the rule's weight function is divided out.
  template <class G>
  auto integrate(const QuadratureRule& r, G&& g) const {
    decltype(g(0.0)) sum{};
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = r.nodes[i];
      const double w = r.weight ? density(e) / r.weight(e) : density(e);
      sum += r.weights[i] * w * g(e);
    }
    return sum;
  }
};

/// Discrete weights Omega_mu plus an optional continuous density under which
/// the recursion polynomials are orthonormal.
struct SpectralMeasure {
  std::vector<DiscreteLevel> discrete;
  /// <x|E_mu> for mu = 0..count-1 at one point.
  std::function<std::vector<double>(std::size_t count, double x)> discrete_eigenfunctions;
  std::optional<ContinuousPart> continuous;
};

/// max |G_nm - delta_nm| over n, m <= max_n with
/// G_nm = sum_mu Omega_mu p_n p_m + int Omega p_n p_m (gate rule).
double orthonormality_defect(const SpectralMeasure& measure, const TridiagonalSpec& spec, std::size_t max_n);

using PositionFunction = std::function<cplx(double)>;

struct EvolvedState {
  cplx z;
  double t = 0.0;
  std::string provenance;  // "spectral", "diagonal"
  PositionFunction psi;

  cplx operator()(double x) const { return psi(x); }
};

/// psi(z; x, t) = Lambda_0 sum_n Q_n [sum_mu sqrt(Omega_mu) p_n(E_mu) e^{-i E_mu t} <x|E_mu>
///                                  + int sqrt(Omega) p_n(E) e^{-i E t} <x|E> dE].
/// When every c_n vanishes the basis is the eigenbasis and the sum runs over levels directly.
EvolvedState evolve(const SpectralMeasure& measure, const CoherentCoefficients& coh,
                    const ShiftCoefficients& sc, double t);

/// As above with an explicit rule for the continuous part.
EvolvedState evolve(const SpectralMeasure& measure, const CoherentCoefficients& coh,
                    const ShiftCoefficients& sc, double t, const QuadratureRule& continuous_rule);

/// Direct basis expansion sum_n v_n phi_n(x).
using BasisEvaluator = std::function<std::vector<double>(std::size_t order, double x)>;
PositionFunction basis_expansion(const BasisEvaluator& basis, const BasisVector& v);

struct UniformGrid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;

  UniformGrid() = default;
  UniformGrid(double start, double stop, std::size_t count);

  double step() const { return (stop - start) / static_cast<double>(count - 1); }
  double at(std::size_t i) const { return start + step() * static_cast<double>(i); }
  std::vector<double> points() const;
};

struct DensityProfile {
  std::vector<double> x;
  std::vector<double> rho;
  double integral = 0.0;  // trapezoid
};

inline constexpr double support_threshold = 1e-10;

/// rho(x_i) = |psi(x_i)|^2. Throws SupportTruncated when an endpoint exceeds
/// `support_threshold`.
DensityProfile density(const PositionFunction& psi, const UniformGrid& grid);

/// Same without the endpoint gate.
DensityProfile density_unchecked(const PositionFunction& psi, const UniformGrid& grid);

/// int x rho dx by the trapezoid rule on the profile's grid.
double mean_position(const DensityProfile& profile);

}  // namespace tcs
