#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcs/evolution.hpp"
#include "tcs/quadrature.hpp"
#include "tcs/tridiag.hpp"

namespace tcs {

enum class ModelKind { morse, radial_ho, ho1d, free_radial };

std::string_view to_string(ModelKind kind);
/// Throws Error(unsupported_kind) for unknown names.
ModelKind parse_model_kind(std::string_view name);

/// key=value lines, '#' starts a comment. Throws Error(config) on malformed lines.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

double parse_real(std::string_view text, std::string_view what);

struct ModelDescriptor {
  ModelKind kind = ModelKind::morse;
  std::map<std::string, double> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  /// Throws Error(config) when missing.
  double param(const std::string& key) const;

  double D() const;   // Morse depth parameter sqrt(2 V0)/alpha - 1/2
  double nu() const;  // ell + 1/2
  int ell() const;

  /// Throws Error(domain) naming the violated invariant. `with_scale = false`
  /// skips the free scale (gamma or lambda), which may still be unset.
  void validate(bool with_scale = true) const;

  /// Keys outside {V0, alpha, gamma, omega, ell, lambda} are rejected; z is not a model key.
  static ModelDescriptor from_pairs(ModelKind kind, const std::vector<std::pair<std::string, std::string>>& pairs);
};

/// Closed-form wavefunction, density and mean position of a model's coherent state.
struct ClosedFormOracle {
  std::function<cplx(double x, double t)> psi;
  std::function<double(double x, double t)> rho;
  std::function<double(double t)> mean;
};

struct Model {
  ModelDescriptor descriptor;
  TridiagonalSpec spec;
  ShiftSequence shift;
  BasisEvaluator basis;
  std::optional<SpectralMeasure> measure;
  /// Empty when the model has no closed form. Throws OutOfDomain for z the oracle does not describe.
  std::function<ClosedFormOracle(cplx z)> oracle;
};

// Morse: c_n = (alpha/sqrt2)(n + gamma + 1/2 - D), d_n = -(alpha/sqrt2) sqrt(n(n + 2 gamma)).
double morse_D(double V0, double alpha);
ShiftCoefficients morse_coefficients(double V0, double alpha, double gamma, std::size_t N);
BasisEvaluator morse_basis(double V0, double alpha, double gamma);
/// sqrt(alpha/Gamma(2D)) y^D e^{-y/2}, y = sqrt(8 V0)/alpha e^{-alpha x}.
std::function<double(double)> morse_ground_state(double V0, double alpha);

// Radial oscillator: c_n = ((lambda - omega/lambda)/sqrt2) sqrt(n + ell + 3/2), d_n = ((lambda + omega/lambda)/sqrt2) sqrt n.
ShiftCoefficients radial_ho_coefficients(double omega, int ell, double lambda, std::size_t N);
/// Laguerre basis in y = lambda r shared by both radial models.
BasisEvaluator radial_basis(int ell, double lambda);
/// Omega_mu = Gamma(mu+nu+1)/(mu! Gamma(nu+1)) tau^mu (1-tau)^(nu+1), E_mu = 2 mu omega.
std::vector<DiscreteLevel> radial_ho_levels(double omega, int ell, double lambda, std::size_t count);
/// count = 0 picks enough levels for the orthonormality gate up to degree 12 (at least 60).
SpectralMeasure radial_ho_measure(double omega, int ell, double lambda, std::size_t count = 0);
std::size_t radial_ho_level_count(double omega, int ell, double lambda);
/// Evolution of phi_0(r; lambda0) under the radial oscillator.
ClosedFormOracle radial_ho_evolution_oracle(double omega, int ell, double lambda0);
/// Ground state at lambda = sqrt(omega).
std::function<double(double)> radial_ho_ground_state(double omega, int ell);

// One-dimensional oscillator, E_n = n omega, diagonal in the Hermite basis.
BasisEvaluator ho1d_basis(double omega);
ClosedFormOracle ho1d_oracle(double omega, cplx z);

// Radial free particle: same basis, omega = 0.
TridiagonalSpec free_radial_spec(int ell, double lambda);
double free_radial_density(int ell, double lambda, double E);
/// Momentum-space composite rule fine enough for time t on r <= rmax.
QuadratureRule free_radial_rule(double lambda, double t, double rmax);
SpectralMeasure free_radial_measure(int ell, double lambda);
ClosedFormOracle free_radial_oracle(int ell, double lambda0);

/// Gamma(nu + 3/2)/Gamma(nu + 1).
double radial_mean_factor(int ell);

/// Scale making z = c_0(scale): gamma for Morse, lambda for the radial models.
/// Throws OutOfDomain when no admissible real scale exists.
double scale_selector(const ModelDescriptor& descriptor, cplx z);

/// The descriptor with its free scale replaced by scale_selector(z).
ModelDescriptor with_selected_scale(ModelDescriptor descriptor, cplx z);

Model make_model(const ModelDescriptor& descriptor);

}  // namespace tcs
