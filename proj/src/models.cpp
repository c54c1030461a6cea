#include "tcs/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "tcs/error.hpp"
#include "tcs/specfun.hpp"

namespace tcs {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;

std::string fmt_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require(bool ok, const std::string& invariant, double got) {
  if (!ok) throw Error(ErrorCode::domain, "invariant violated: " + invariant + " (got " + fmt_value(got) + ")");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::morse: return "morse";
    case ModelKind::radial_ho: return "radial_ho";
    case ModelKind::ho1d: return "ho1d";
    case ModelKind::free_radial: return "free_radial";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::morse, ModelKind::radial_ho, ModelKind::ho1d, ModelKind::free_radial}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorCode::unsupported_kind, "unknown model '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::config, "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::config, "line " + std::to_string(line_no) + ": empty key or value");
    }
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::config, std::string(what) + ": not a real number '" + std::string(text) + "'");
  }
  return v;
}

double ModelDescriptor::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorCode::config, "model " + std::string(to_string(kind)) + " needs parameter " + key);
  }
  return it->second;
}

double ModelDescriptor::D() const { return morse_D(param("V0"), param("alpha")); }

int ModelDescriptor::ell() const { return static_cast<int>(std::lround(param("ell"))); }

double ModelDescriptor::nu() const { return ell() + 0.5; }

void ModelDescriptor::validate(bool with_scale) const {
  auto check_ell = [&] {
    const double l = param("ell");
    require(l >= 0.0 && l == std::round(l), "ell >= 0 integer", l);
  };
  switch (kind) {
    case ModelKind::morse: {
      require(param("V0") > 0.0, "V0 > 0", param("V0"));
      require(param("alpha") > 0.0, "alpha > 0", param("alpha"));
      require(D() > 0.0, "D = sqrt(2 V0)/alpha - 1/2 > 0", D());
      if (with_scale) require(param("gamma") > -0.5, "gamma > -1/2", param("gamma"));
      break;
    }
    case ModelKind::radial_ho:
      require(param("omega") > 0.0, "omega > 0", param("omega"));
      check_ell();
      if (with_scale) require(param("lambda") > 0.0, "lambda > 0", param("lambda"));
      break;
    case ModelKind::ho1d:
      require(param("omega") > 0.0, "omega > 0", param("omega"));
      break;
    case ModelKind::free_radial:
      check_ell();
      if (with_scale) require(param("lambda") > 0.0, "lambda > 0", param("lambda"));
      break;
  }
}

ModelDescriptor ModelDescriptor::from_pairs(ModelKind kind,
                                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  static const std::set<std::string> known = {"V0", "alpha", "gamma", "omega", "ell", "lambda"};
  ModelDescriptor d;
  d.kind = kind;
  for (const auto& [key, value] : pairs) {
    if (!known.count(key)) throw Error(ErrorCode::config, "unknown model parameter '" + key + "'");
    d.params[key] = parse_real(value, key);
  }
  return d;
}

// ---- Morse

double morse_D(double V0, double alpha) { return std::sqrt(2.0 * V0) / alpha - 0.5; }

ShiftCoefficients morse_coefficients(double V0, double alpha, double gamma, std::size_t N) {
  const double D = morse_D(V0, alpha);
  std::vector<double> c(N + 1), d(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    const double nn = static_cast<double>(n);
    c[n] = alpha * inv_sqrt2 * (nn + gamma + 0.5 - D);
    d[n] = -alpha * inv_sqrt2 * std::sqrt(nn * (nn + 2.0 * gamma));
  }
  d[0] = 0.0;
  return ShiftCoefficients(std::move(c), std::move(d));
}

BasisEvaluator morse_basis(double V0, double alpha, double gamma) {
  const double y_scale = std::sqrt(8.0 * V0) / alpha;
  return [=](std::size_t order, double x) {
    const double y = y_scale * std::exp(-alpha * x);
    const std::vector<double> L = specfun::laguerre_sequence(static_cast<int>(order), 2.0 * gamma, y);
    std::vector<double> out(order + 1);
    const double log_common = 0.5 * std::log(alpha) + (gamma + 0.5) * std::log(y) - 0.5 * y;
    for (std::size_t n = 0; n <= order; ++n) {
      const double nn = static_cast<double>(n);
      const double log_norm = 0.5 * (specfun::ln_gamma(nn + 1.0) - specfun::ln_gamma(nn + 2.0 * gamma + 1.0));
      out[n] = std::exp(log_common + log_norm) * L[n];
    }
    return out;
  };
}

std::function<double(double)> morse_ground_state(double V0, double alpha) {
  const double D = morse_D(V0, alpha);
  const double y_scale = std::sqrt(8.0 * V0) / alpha;
  const double log_norm = 0.5 * (std::log(alpha) - specfun::ln_gamma(2.0 * D));
  return [=](double x) {
    const double y = y_scale * std::exp(-alpha * x);
    return std::exp(log_norm + D * std::log(y) - 0.5 * y);
  };
}

// ---- radial models

ShiftCoefficients radial_ho_coefficients(double omega, int ell, double lambda, std::size_t N) {
  std::vector<double> c(N + 1), d(N + 1);
  const double minus = (lambda - omega / lambda) * inv_sqrt2;
  const double plus = (lambda + omega / lambda) * inv_sqrt2;
  for (std::size_t n = 0; n <= N; ++n) {
    const double nn = static_cast<double>(n);
    c[n] = minus * std::sqrt(nn + ell + 1.5);
    d[n] = plus * std::sqrt(nn);
  }
  return ShiftCoefficients(std::move(c), std::move(d));
}

BasisEvaluator radial_basis(int ell, double lambda) {
  const double nu = ell + 0.5;
  return [=](std::size_t order, double r) {
    std::vector<double> out(order + 1, 0.0);
    if (r <= 0.0) return out;
    const double y = lambda * r;
    const std::vector<double> L = specfun::laguerre_sequence(static_cast<int>(order), nu, y * y);
    const double log_common = 0.5 * std::log(2.0 * lambda) + (nu + 0.5) * std::log(y) - 0.5 * y * y;
    for (std::size_t n = 0; n <= order; ++n) {
      const double nn = static_cast<double>(n);
      const double log_norm = 0.5 * (specfun::ln_gamma(nn + 1.0) - specfun::ln_gamma(nn + nu + 1.0));
      out[n] = std::exp(log_common + log_norm) * L[n];
    }
    return out;
  };
}

std::vector<DiscreteLevel> radial_ho_levels(double omega, int ell, double lambda, std::size_t count) {
  const double nu = ell + 0.5;
  const double l2 = lambda * lambda;
  const double root_tau = (l2 - omega) / (l2 + omega);
  const double tau = root_tau * root_tau;
  std::vector<DiscreteLevel> out(count);
  for (std::size_t mu = 0; mu < count; ++mu) {
    const double m = static_cast<double>(mu);
    double w = 0.0;
    if (tau == 0.0) {
      w = mu == 0 ? 1.0 : 0.0;
    } else {
      w = std::exp(specfun::ln_gamma(m + nu + 1.0) - specfun::ln_gamma(m + 1.0) - specfun::ln_gamma(nu + 1.0) +
                   m * std::log(tau) + (nu + 1.0) * std::log1p(-tau));
    }
    out[mu] = {2.0 * m * omega, w};
  }
  return out;
}

std::size_t radial_ho_level_count(double omega, int ell, double lambda) {
  const double l2 = lambda * lambda;
  const double root_tau = (l2 - omega) / (l2 + omega);
  const double tau = root_tau * root_tau;
  if (tau == 0.0) return 60;
  const double nu = ell + 0.5;
  // Omega_mu mu^12 has to fall below 1e-18 past its peak.
  for (std::size_t m = 60; m < 20000; ++m) {
    const double mm = static_cast<double>(m);
    const double log_w = specfun::ln_gamma(mm + nu + 1.0) - specfun::ln_gamma(mm + 1.0) -
                         specfun::ln_gamma(nu + 1.0) + mm * std::log(tau) + (nu + 1.0) * std::log1p(-tau);
    if (mm * std::log(tau) + 12.0 * std::log(mm) < 0.0 && log_w + 12.0 * std::log(mm) < std::log(1e-18)) return m;
  }
  throw Error(ErrorCode::not_converged, "radial_ho_measure: weights decay too slowly");
}

SpectralMeasure radial_ho_measure(double omega, int ell, double lambda, std::size_t count) {
  if (count == 0) count = radial_ho_level_count(omega, ell, lambda);
  SpectralMeasure m;
  m.discrete = radial_ho_levels(omega, ell, lambda, count);
  // <r|E_mu> = s^mu phi_mu(r; sqrt(omega)) with s the sign of lambda^2 - omega.
  const double s = lambda * lambda >= omega ? 1.0 : -1.0;
  const BasisEvaluator eigen = radial_basis(ell, std::sqrt(omega));
  m.discrete_eigenfunctions = [eigen, s](std::size_t count_, double r) {
    std::vector<double> u = eigen(count_ - 1, r);
    if (s < 0.0) {
      for (std::size_t mu = 1; mu < u.size(); mu += 2) u[mu] = -u[mu];
    }
    return u;
  };
  return m;
}

double radial_mean_factor(int ell) {
  const double nu = ell + 0.5;
  return std::exp(specfun::ln_gamma(nu + 1.5) - specfun::ln_gamma(nu + 1.0));
}

ClosedFormOracle radial_ho_evolution_oracle(double omega, int ell, double lambda0) {
  const double nu = ell + 0.5;
  const double l2 = lambda0 * lambda0;
  const double root_tau = (l2 - omega) / (l2 + omega);
  const double tau = root_tau * root_tau;
  const double lg = specfun::ln_gamma(nu + 1.0);
  const double prefactor = std::sqrt(2.0 * std::sqrt(omega) / std::exp(lg)) * std::pow(1.0 - tau, 0.5 * (1.0 + nu));
  const double K = radial_mean_factor(ell);
  ClosedFormOracle o;
  o.psi = [=](double r, double t) -> cplx {
    if (r <= 0.0) return 0.0;
    const cplx y = root_tau * std::polar(1.0, -2.0 * omega * t);
    const cplx one_minus = 1.0 - y;
    return prefactor / std::pow(one_minus, 1.0 + nu) * std::pow(std::sqrt(omega) * r, ell + 1.0) *
           std::exp(-0.5 * omega * r * r * (1.0 + y) / one_minus);
  };
  o.rho = [=](double r, double t) {
    if (r <= 0.0) return 0.0;
    const double G = (1.0 - tau) / (1.0 + tau - 2.0 * root_tau * std::cos(2.0 * omega * t));
    return 2.0 * std::exp((nu + 1.0) * std::log(omega * G) - lg) * std::pow(r, 2.0 * ell + 2.0) *
           std::exp(-omega * r * r * G);
  };
  o.mean = [=](double t) {
    const double s = std::sin(omega * t), c = std::cos(omega * t);
    return K * std::sqrt((l2 * l2 * s * s + omega * omega * c * c) / (omega * omega * l2));
  };
  return o;
}

std::function<double(double)> radial_ho_ground_state(double omega, int ell) {
  // Gamma(ell + 3/2) in the normalization.
  const double norm = std::sqrt(2.0 * std::sqrt(omega) / std::exp(specfun::ln_gamma(ell + 1.5)));
  return [=](double r) {
    if (r <= 0.0) return 0.0;
    return norm * std::pow(std::sqrt(omega) * r, ell + 1.0) * std::exp(-0.5 * omega * r * r);
  };
}

// ---- 1D oscillator

BasisEvaluator ho1d_basis(double omega) {
  return [=](std::size_t order, double x) {
    std::vector<double> out(order + 1);
    const double xi = std::sqrt(omega) * x;
    out[0] = std::pow(omega / std::numbers::pi, 0.25) * std::exp(-0.5 * xi * xi);
    if (order >= 1) out[1] = std::sqrt(2.0) * xi * out[0];
    for (std::size_t n = 1; n < order; ++n) {
      const double nn = static_cast<double>(n);
      out[n + 1] = std::sqrt(2.0 / (nn + 1.0)) * xi * out[n] - std::sqrt(nn / (nn + 1.0)) * out[n - 1];
    }
    return out;
  };
}

ClosedFormOracle ho1d_oracle(double omega, cplx z) {
  const double front = std::pow(omega / std::numbers::pi, 0.25);
  const double az = std::abs(z);
  const double phi = std::arg(z);
  ClosedFormOracle o;
  o.psi = [=](double x, double t) {
    const cplx u = z * std::polar(1.0, -omega * t) / std::sqrt(2.0 * omega);
    return front * std::exp(-0.5 * omega * x * x - az * az / (2.0 * omega) + 2.0 * std::sqrt(omega) * x * u - u * u);
  };
  o.mean = [=](double t) { return std::sqrt(2.0) * az / omega * std::cos(omega * t - phi); };
  o.rho = [=, mean = o.mean](double x, double t) {
    const double dx = x - mean(t);
    return std::sqrt(omega / std::numbers::pi) * std::exp(-omega * dx * dx);
  };
  return o;
}

// ---- radial free particle

TridiagonalSpec free_radial_spec(int ell, double lambda) {
  const double nu = ell + 0.5;
  const double h = 0.5 * lambda * lambda;
  return TridiagonalSpec([=](std::size_t n) { return h * (2.0 * static_cast<double>(n) + nu + 1.0); },
                         [=](std::size_t n) {
                           const double nn = static_cast<double>(n);
                           return h * std::sqrt((nn + 1.0) * (nn + nu + 1.0));
                         },
                         "free_radial");
}

double free_radial_density(int ell, double lambda, double E) {
  if (E <= 0.0) return 0.0;
  const double nu = ell + 0.5;
  const double u = 2.0 * E / (lambda * lambda);
  return 2.0 / (lambda * lambda) * std::exp(nu * std::log(u) - u - specfun::ln_gamma(nu + 1.0));
}

QuadratureRule free_radial_rule(double lambda, double t, double rmax) {
  const double kmax = 7.0 * lambda;
  const double h = std::min(0.1, 4.0 / (kmax * std::abs(t) + rmax));
  QuadratureRequest req;
  req.kind = QuadratureKind::uniform_momentum;
  req.order = 10;
  req.length = kmax;
  req.panels = static_cast<std::size_t>(std::ceil(kmax / h));
  return quadrature_for_measure(req);
}

SpectralMeasure free_radial_measure(int ell, double lambda) {
  const double nu = ell + 0.5;
  ContinuousPart part;
  part.density = [=](double E) { return free_radial_density(ell, lambda, E); };
  part.rule = free_radial_rule(lambda, 1.0, 8.0 * std::sqrt(1.0 + std::pow(lambda, 4)) / lambda);
  QuadratureRequest gate;
  gate.kind = QuadratureKind::generalized_laguerre;
  gate.order = 64;
  gate.exponent = nu;
  gate.scale = 0.5 * lambda * lambda;
  part.gate_rule = quadrature_for_measure(gate);
  part.rule_for = [lambda](double t, double rmax) { return free_radial_rule(lambda, t, rmax); };
  // <r|E> = sqrt(r) J_nu(k r), E = k^2/2.
  part.eigenfunction = [=](double E, double r) {
    if (r <= 0.0 || E <= 0.0) return 0.0;
    return std::sqrt(r) * specfun::bessel_j_half(nu, std::sqrt(2.0 * E) * r);
  };
  SpectralMeasure m;
  m.continuous = std::move(part);
  return m;
}

ClosedFormOracle free_radial_oracle(int ell, double lambda0) {
  const double nu = ell + 0.5;
  const double lg = specfun::ln_gamma(nu + 1.0);
  const double log_lambda = std::log(lambda0);
  const double l2 = lambda0 * lambda0;
  const double K = radial_mean_factor(ell);
  ClosedFormOracle o;
  o.psi = [=](double r, double t) -> cplx {
    if (r <= 0.0) return 0.0;
    // log beta = log lambda - 1/2 log(1 + i lambda^2 t)
    const cplx log_beta = log_lambda - 0.5 * std::log(cplx(1.0, l2 * t));
    const cplx beta2 = std::exp(2.0 * log_beta);
    const cplx lg_psi = (nu + 1.0) * (log_beta - log_lambda) + 0.5 * (std::log(2.0) + log_beta - lg) +
                        (ell + 1.0) * (log_beta + std::log(r)) - 0.5 * beta2 * r * r;
    return std::exp(lg_psi);
  };
  o.rho = [=](double r, double t) {
    if (r <= 0.0) return 0.0;
    const double s = 1.0 + l2 * l2 * t * t;
    return 2.0 / std::exp(lg) * lambda0 / std::pow(s, nu + 1.0) * std::pow(lambda0 * r, 2.0 * ell + 2.0) *
           std::exp(-l2 * r * r / s);
  };
  o.mean = [=](double t) { return K * std::sqrt((1.0 + l2 * l2 * t * t) / l2); };
  return o;
}

// ---- scale selection and assembly

double scale_selector(const ModelDescriptor& d, cplx z) {
  if (std::abs(z.imag()) > 0.0) {
    throw Error(ErrorCode::out_of_domain, "scale_selector: no real scale for complex z");
  }
  const double x = z.real();
  switch (d.kind) {
    case ModelKind::morse: {
      const double gamma = x * std::sqrt(2.0) / d.param("alpha") + d.D() - 0.5;
      if (!(gamma > -0.5)) {
        throw Error(ErrorCode::out_of_domain, "scale_selector: gamma = " + fmt_value(gamma) + " violates gamma > -1/2");
      }
      return gamma;
    }
    case ModelKind::radial_ho: {
      const double s = std::sqrt(2.0 * d.ell() + 3.0);
      return x / s + std::sqrt(x * x / (s * s) + d.param("omega"));
    }
    case ModelKind::free_radial: {
      const double lambda = 2.0 * x / std::sqrt(2.0 * d.ell() + 3.0);
      if (!(lambda > 0.0)) {
        throw Error(ErrorCode::out_of_domain, "scale_selector: lambda = " + fmt_value(lambda) + " violates lambda > 0");
      }
      return lambda;
    }
    case ModelKind::ho1d:
      break;
  }
  throw Error(ErrorCode::out_of_domain, "scale_selector: model ho1d has no free scale");
}

ModelDescriptor with_selected_scale(ModelDescriptor d, cplx z) {
  const double s = scale_selector(d, z);
  d.params[d.kind == ModelKind::morse ? "gamma" : "lambda"] = s;
  return d;
}

namespace {

TridiagonalSpec spec_from_shift(const ShiftSequence& shift, std::string label) {
  return TridiagonalSpec(
      [shift](std::size_t n) {
        const ShiftCoefficients sc = shift.take(n);
        return sc.c(n) * sc.c(n) + sc.d(n) * sc.d(n);
      },
      [shift](std::size_t n) {
        const ShiftCoefficients sc = shift.take(n + 1);
        return sc.c(n) * sc.d(n + 1);
      },
      std::move(label));
}

void require_oracle_z(cplx z, double c0) {
  if (std::abs(z - c0) > 1e-9 * (1.0 + std::abs(z))) {
    throw Error(ErrorCode::out_of_domain, "closed form describes z = c_0 = " + fmt_value(c0) + " only");
  }
}

}  // namespace

Model make_model(const ModelDescriptor& d) {
  d.validate();
  switch (d.kind) {
    case ModelKind::morse: {
      const double V0 = d.param("V0"), alpha = d.param("alpha"), gamma = d.param("gamma");
      ShiftSequence shift([=](std::size_t N) { return morse_coefficients(V0, alpha, gamma, N); });
      TridiagonalSpec spec = spec_from_shift(shift, "morse");
      return Model{d, std::move(spec), shift, morse_basis(V0, alpha, gamma), std::nullopt, {}};
    }
    case ModelKind::radial_ho: {
      const double omega = d.param("omega"), lambda = d.param("lambda");
      const int ell = d.ell();
      ShiftSequence shift([=](std::size_t N) { return radial_ho_coefficients(omega, ell, lambda, N); });
      TridiagonalSpec spec = spec_from_shift(shift, "radial_ho");
      const double c0 = radial_ho_coefficients(omega, ell, lambda, 0).c(0);
      auto oracle = [=](cplx z) {
        require_oracle_z(z, c0);
        return radial_ho_evolution_oracle(omega, ell, lambda);
      };
      return Model{d, std::move(spec), shift, radial_basis(ell, lambda), radial_ho_measure(omega, ell, lambda),
                   oracle};
    }
    case ModelKind::ho1d: {
      const double omega = d.param("omega");
      ShiftSequence shift([=](std::size_t N) {
        std::vector<double> c(N + 1, 0.0), dd(N + 1);
        for (std::size_t n = 0; n <= N; ++n) dd[n] = std::sqrt(static_cast<double>(n) * omega);
        return ShiftCoefficients(std::move(c), std::move(dd));
      });
      TridiagonalSpec spec([=](std::size_t n) { return static_cast<double>(n) * omega; },
                           [](std::size_t) { return 0.0; }, "ho1d");
      SpectralMeasure m;
      // Diagonal: the basis is the eigenbasis and each level carries one basis state.
      m.discrete.resize(4096);
      for (std::size_t n = 0; n < m.discrete.size(); ++n) m.discrete[n] = {static_cast<double>(n) * omega, 1.0};
      m.discrete_eigenfunctions = [basis = ho1d_basis(omega)](std::size_t count, double x) {
        return basis(count - 1, x);
      };
      auto oracle = [=](cplx z) { return ho1d_oracle(omega, z); };
      return Model{d, std::move(spec), shift, ho1d_basis(omega), std::move(m), oracle};
    }
    case ModelKind::free_radial: {
      const double lambda = d.param("lambda");
      const int ell = d.ell();
      TridiagonalSpec spec = free_radial_spec(ell, lambda);
      ShiftSequence shift([spec](std::size_t N) { return factorize(spec, N); });
      const double c0 = lambda * inv_sqrt2 * std::sqrt(ell + 1.5);
      auto oracle = [=](cplx z) {
        require_oracle_z(z, c0);
        return free_radial_oracle(ell, lambda);
      };
      return Model{d, std::move(spec), shift, radial_basis(ell, lambda), free_radial_measure(ell, lambda), oracle};
    }
  }
  throw Error(ErrorCode::unsupported_kind, "make_model: unknown kind");
}

}  // namespace tcs
