#include "tcs/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcs/error.hpp"

namespace tcs {

double orthonormality_defect(const SpectralMeasure& measure, const TridiagonalSpec& spec, std::size_t max_n) {
  const std::size_t m = max_n + 1;
  std::vector<double> gram(m * m, 0.0);
  auto accumulate = [&](double E, double w) {
    const std::vector<double> p = eval_polynomials(spec, E, max_n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) gram[i * m + j] += w * p[i] * p[j];
    }
  };
  for (const DiscreteLevel& level : measure.discrete) {
    if (level.weight < 0.0) throw Error(ErrorCode::domain, "spectral measure: negative discrete weight");
    accumulate(level.energy, level.weight);
  }
  if (measure.continuous) {
    const ContinuousPart& part = *measure.continuous;
    const QuadratureRule& r = part.gate_rule.empty() ? part.rule : part.gate_rule;
    if (r.empty()) throw Error(ErrorCode::quadrature_unavailable, "continuous spectrum without a rule");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = r.nodes[i];
      const double w = r.weight ? part.density(e) / r.weight(e) : part.density(e);
      accumulate(e, r.weights[i] * w);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      worst = std::max(worst, std::abs(gram[i * m + j] - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

namespace {

// Lambda_0 sum_n Q_n p_n(E), the overlap <E|z) up to sqrt(Omega).
cplx spectral_amplitude(const TridiagonalSpec& spec, const CoherentCoefficients& coh, double E) {
  const std::vector<double> p = eval_polynomials(spec, E, coh.order);
  cplx s = 0.0;
  for (std::size_t n = 0; n <= coh.order; ++n) s += coh.q[n] * p[n];
  return coh.lambda0 * s;
}

cplx phase(double E, double t) { return std::polar(1.0, -E * t); }

EvolvedState evolve_diagonal(const SpectralMeasure& measure, const CoherentCoefficients& coh, double t) {
  if (measure.discrete.size() <= coh.order || !measure.discrete_eigenfunctions) {
    throw Error(ErrorCode::domain, "evolve: diagonal case needs a discrete level per basis state");
  }
  std::vector<cplx> amp(coh.order + 1);
  for (std::size_t n = 0; n <= coh.order; ++n) {
    amp[n] = coh.lambda0 * coh.q[n] * phase(measure.discrete[n].energy, t);
  }
  EvolvedState out;
  out.z = coh.z;
  out.t = t;
  out.provenance = "diagonal";
  out.psi = [amp = std::move(amp), ef = measure.discrete_eigenfunctions](double x) {
    const std::vector<double> u = ef(amp.size(), x);
    cplx s = 0.0;
    for (std::size_t n = 0; n < amp.size(); ++n) s += amp[n] * u[n];
    return s;
  };
  return out;
}

}  // namespace

EvolvedState evolve(const SpectralMeasure& measure, const CoherentCoefficients& coh,
                    const ShiftCoefficients& sc, double t) {
  QuadratureRule rule;
  if (measure.continuous) rule = measure.continuous->rule;
  return evolve(measure, coh, sc, t, rule);
}

EvolvedState evolve(const SpectralMeasure& measure, const CoherentCoefficients& coh,
                    const ShiftCoefficients& sc, double t, const QuadratureRule& continuous_rule) {
  if (coh.order > sc.order()) throw Error(ErrorCode::domain, "evolve: coherent order exceeds shift order");
  if (measure.continuous && continuous_rule.empty()) {
    throw Error(ErrorCode::quadrature_unavailable, "evolve: continuous spectrum present but no rule supplied");
  }
  if (sc.diagonal()) return evolve_diagonal(measure, coh, t);

  std::vector<double> c(sc.c().begin(), sc.c().begin() + static_cast<std::ptrdiff_t>(coh.order + 1));
  std::vector<double> d(sc.d().begin(), sc.d().begin() + static_cast<std::ptrdiff_t>(coh.order + 1));
  TridiagonalEntries entries = reconstruct(ShiftCoefficients(std::move(c), std::move(d)));
  const TridiagonalSpec spec = TridiagonalSpec::from_vectors(entries.a, entries.b, "evolve");

  std::vector<cplx> discrete_amp(measure.discrete.size());
  for (std::size_t mu = 0; mu < measure.discrete.size(); ++mu) {
    const DiscreteLevel& level = measure.discrete[mu];
    discrete_amp[mu] = std::sqrt(level.weight) * spectral_amplitude(spec, coh, level.energy) * phase(level.energy, t);
  }
  // Trailing negligible levels cost eigenfunction evaluations for nothing.
  while (!discrete_amp.empty() && discrete_amp.back() == cplx{0.0}) discrete_amp.pop_back();

  std::vector<double> energies;
  std::vector<cplx> continuous_amp;
  std::function<double(double, double)> cont_ef;
  if (measure.continuous) {
    const ContinuousPart& part = *measure.continuous;
    cont_ef = part.eigenfunction;
    for (std::size_t i = 0; i < continuous_rule.size(); ++i) {
      const double e = continuous_rule.nodes[i];
      const double dens = part.density(e);
      if (!(dens > 0.0)) continue;
      const double root = continuous_rule.weight ? std::sqrt(dens) / continuous_rule.weight(e) : std::sqrt(dens);
      const cplx a = continuous_rule.weights[i] * root * spectral_amplitude(spec, coh, e) * phase(e, t);
      if (a == cplx{0.0}) continue;
      energies.push_back(e);
      continuous_amp.push_back(a);
    }
  }

  EvolvedState out;
  out.z = coh.z;
  out.t = t;
  out.provenance = "spectral";
  out.psi = [discrete_amp = std::move(discrete_amp), ef = measure.discrete_eigenfunctions,
             energies = std::move(energies), continuous_amp = std::move(continuous_amp),
             cont_ef = std::move(cont_ef)](double x) {
    cplx s = 0.0;
    if (!discrete_amp.empty()) {
      const std::vector<double> u = ef(discrete_amp.size(), x);
      for (std::size_t mu = 0; mu < discrete_amp.size(); ++mu) s += discrete_amp[mu] * u[mu];
    }
    for (std::size_t i = 0; i < energies.size(); ++i) s += continuous_amp[i] * cont_ef(energies[i], x);
    return s;
  };
  return out;
}

PositionFunction basis_expansion(const BasisEvaluator& basis, const BasisVector& v) {
  if (v.empty()) throw Error(ErrorCode::domain, "basis_expansion: empty coefficient vector");
  return [basis, v](double x) {
    const std::vector<double> phi = basis(v.size() - 1, x);
    cplx s = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) s += v[n] * phi[n];
    return s;
  };
}

UniformGrid::UniformGrid(double start_, double stop_, std::size_t count_)
    : start(start_), stop(stop_), count(count_) {
  if (count < 2) throw Error(ErrorCode::config, "grid needs at least 2 points");
  if (!(stop > start)) throw Error(ErrorCode::config, "grid needs stop > start");
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) xs[i] = at(i);
  xs.back() = stop;
  return xs;
}

DensityProfile density_unchecked(const PositionFunction& psi, const UniformGrid& grid) {
  DensityProfile out;
  out.x = grid.points();
  out.rho.resize(out.x.size());
  for (std::size_t i = 0; i < out.x.size(); ++i) out.rho[i] = std::norm(psi(out.x[i]));
  const double h = grid.step();
  double sum = 0.0;
  for (std::size_t i = 0; i < out.rho.size(); ++i) {
    sum += (i == 0 || i + 1 == out.rho.size() ? 0.5 : 1.0) * out.rho[i];
  }
  out.integral = sum * h;
  return out;
}

DensityProfile density(const PositionFunction& psi, const UniformGrid& grid) {
  DensityProfile out = density_unchecked(psi, grid);
  for (std::size_t i : {std::size_t{0}, out.rho.size() - 1}) {
    if (out.rho[i] > support_threshold) {
      throw Error(ErrorCode::support_truncated, "density: rho(" + std::to_string(out.x[i]) +
                                                    ") = " + std::to_string(out.rho[i]) +
                                                    " exceeds the support threshold");
    }
  }
  return out;
}

double mean_position(const DensityProfile& profile) {
  if (profile.x.size() < 2) return 0.0;
  const double h = (profile.x.back() - profile.x.front()) / static_cast<double>(profile.x.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    sum += (i == 0 || i + 1 == profile.x.size() ? 0.5 : 1.0) * profile.x[i] * profile.rho[i];
  }
  return sum * h;
}

}  // namespace tcs
