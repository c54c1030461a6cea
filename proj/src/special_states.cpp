#include "tcs/special_states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tcs/error.hpp"

namespace tcs {

namespace {

// Product kept as log-magnitude and unit phase so long node products neither
// overflow nor underflow.
class LogProduct {
 public:
  void mul(cplx f) {
    const double m = std::abs(f);
    if (m == 0.0) {
      zero_ = true;
      return;
    }
    log_mag_ += std::log(m);
    phase_ *= f / m;
  }
  void div(cplx f) {
    const double m = std::abs(f);
    log_mag_ -= std::log(m);
    phase_ *= std::conj(f) / m;
  }
  void mul(const LogProduct& o) {
    zero_ = zero_ || o.zero_;
    log_mag_ += o.log_mag_;
    phase_ *= o.phase_;
  }
  double log_mag() const { return zero_ ? -std::numeric_limits<double>::infinity() : log_mag_; }
  cplx phase() const { return phase_; }
  cplx value(double shift = 0.0) const {
    return zero_ ? cplx{0.0} : phase_ * std::exp(log_mag_ - shift);
  }

 private:
  double log_mag_ = 0.0;
  cplx phase_ = 1.0;
  bool zero_ = false;
};

double node_scale(std::span<const double> nodes) {
  double m = 0.0;
  for (double c : nodes) m = std::max(m, std::abs(c));
  return 1.0 + m;
}

}  // namespace

void require_distinct_nodes(std::span<const double> nodes) {
  const double tol = 1e-8 * node_scale(nodes);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (std::abs(nodes[a] - nodes[b]) <= tol) {
        throw Error(ErrorCode::duplicate_nodes, "nodes c_" + std::to_string(a) + " and c_" +
                                                    std::to_string(b) + " coincide");
      }
    }
  }
}

ExtMatrix build_lambda(const ShiftCoefficients& sc, std::size_t N) {
  if (N > sc.order()) throw Error(ErrorCode::domain, "build_lambda: order exceeds shift coefficients");
  const std::span<const double> c = sc.c().first(N + 1);
  require_distinct_nodes(c);
  const auto size = static_cast<Eigen::Index>(N + 1);
  ExtMatrix lambda = ExtMatrix::Zero(size, size);
  for (std::size_t alpha = 0; alpha <= N; ++alpha) {
    std::vector<long double> q(alpha + 1);
    q[0] = 1.0L;
    long double sum = 1.0L;
    for (std::size_t n = 1; n <= alpha; ++n) {
      if (sc.d(n) == 0.0) {
        throw Error(ErrorCode::singular_diagonal, "build_lambda: d_" + std::to_string(n) + " = 0");
      }
      q[n] = q[n - 1] * (static_cast<long double>(c[alpha]) - c[n - 1]) / sc.d(n);
      sum += q[n] * q[n];
    }
    const long double lambda0 = 1.0L / std::sqrt(sum);
    for (std::size_t n = 0; n <= alpha; ++n) {
      lambda(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(alpha)) = lambda0 * q[n];
    }
  }
  return lambda;
}

ExtMatrix build_lambda_bar(const ShiftCoefficients& sc, const ExtMatrix& lambda) {
  const auto size = lambda.rows();
  const std::span<const double> c = sc.c().first(static_cast<std::size_t>(size));
  require_distinct_nodes(c);
  ExtMatrix bar = ExtMatrix::Zero(size, size);
  for (Eigen::Index alpha = 0; alpha < size; ++alpha) {
    const long double diag = lambda(alpha, alpha);
    if (diag == 0.0L || !std::isfinite(diag)) {
      throw Error(ErrorCode::singular_diagonal,
                  "build_lambda_bar: Lambda_{" + std::to_string(alpha) + "," + std::to_string(alpha) + "} = 0");
    }
    long double entry = 1.0L / diag;
    bar(alpha, alpha) = entry;
    for (Eigen::Index m = alpha + 1; m < size; ++m) {
      entry *= sc.d(static_cast<std::size_t>(m)) / (static_cast<long double>(c[alpha]) - c[m]);
      bar(alpha, m) = entry;
    }
  }
  return bar;
}

SpecialStateMatrices special_state_matrices(const ShiftCoefficients& sc, std::size_t N) {
  SpecialStateMatrices out;
  out.lambda = build_lambda(sc, N);
  out.lambda_bar = build_lambda_bar(sc, out.lambda);
  out.nodes.assign(sc.c().begin(), sc.c().begin() + static_cast<std::ptrdiff_t>(N + 1));
  return out;
}

SummationSides summation_identity_check(std::span<const double> nodes, cplx z, std::size_t alpha,
                                        std::size_t gamma) {
  if (gamma < 1) throw Error(ErrorCode::domain, "summation_identity_check: gamma must be >= 1");
  if (alpha + gamma >= nodes.size()) {
    throw Error(ErrorCode::domain, "summation_identity_check: needs nodes up to c_{alpha+gamma}");
  }
  require_distinct_nodes(nodes.subspan(alpha, gamma + 1));
  const double ca = nodes[alpha];
  cplx lhs = 1.0;
  cplx term = 1.0;
  for (std::size_t n = 1; n <= gamma; ++n) {
    const std::size_t j = n + alpha - 1;
    term *= (z - nodes[j]) / (ca - nodes[j + 1]);
    lhs += term;
  }
  cplx rhs = 1.0;
  for (std::size_t k = alpha + 1; k <= gamma + alpha; ++k) rhs *= (z - nodes[k]) / (ca - nodes[k]);
  return {lhs, rhs};
}

namespace {

LogProduct lagrange_kernel(std::span<const double> nodes, cplx z, std::size_t alpha) {
  LogProduct p;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k == alpha) continue;
    p.mul(z - nodes[k]);
    p.div(nodes[alpha] - nodes[k]);
  }
  return p;
}

}  // namespace

cplx kernel_K(const SpecialStateMatrices& mats, cplx z, std::size_t alpha, double lambda0_z) {
  if (alpha > mats.order()) throw Error(ErrorCode::domain, "kernel_K: alpha beyond node count");
  const auto a = static_cast<Eigen::Index>(alpha);
  return lambda0_z / static_cast<double>(mats.lambda(0, a)) * lagrange_kernel(mats.nodes, z, alpha).value();
}

std::string_view to_string(LagrangeForm form) {
  switch (form) {
    case LagrangeForm::i: return "i";
    case LagrangeForm::ii: return "ii";
    case LagrangeForm::iii: return "iii";
  }
  return "?";
}

LagrangeExpansion lagrange_expand(const SpecialStateMatrices& mats, cplx z, LagrangeForm form) {
  const std::size_t count = mats.nodes.size();
  const auto size = static_cast<Eigen::Index>(count);
  LagrangeExpansion out;
  out.z = z;
  out.form = form;
  out.node_count = count;
  out.weights.assign(count, 0.0);

  // |c_alpha) / Lambda_{0,alpha}
  auto scaled_column = [&](std::size_t alpha, Eigen::Index n) {
    const auto a = static_cast<Eigen::Index>(alpha);
    return static_cast<double>(mats.lambda(n, a) / mats.lambda(0, a));
  };

  if (form != LagrangeForm::i) {
    for (std::size_t alpha = 0; alpha < count; ++alpha) {
      if (std::abs(z - mats.nodes[alpha]) < 1e-10) {
        out.at_node = true;
        out.weights[alpha] = 1.0;
        out.lambda0 = static_cast<double>(mats.lambda(0, static_cast<Eigen::Index>(alpha)));
        out.assembled.assign(count, 0.0);
        for (Eigen::Index n = 0; n < size; ++n) {
          out.assembled[static_cast<std::size_t>(n)] = static_cast<double>(mats.lambda(n, static_cast<Eigen::Index>(alpha)));
        }
        return out;
      }
    }
  }

  std::vector<cplx> raw(count);
  switch (form) {
    case LagrangeForm::i:
      for (std::size_t alpha = 0; alpha < count; ++alpha) {
        raw[alpha] = lagrange_kernel(mats.nodes, z, alpha).value();
      }
      break;
    case LagrangeForm::ii: {
      LogProduct big_l;
      for (double c : mats.nodes) big_l.mul(z - c);
      for (std::size_t alpha = 0; alpha < count; ++alpha) {
        LogProduct w = big_l;
        for (std::size_t beta = 0; beta < count; ++beta) {
          if (beta != alpha) w.div(mats.nodes[alpha] - mats.nodes[beta]);
        }
        w.div(z - mats.nodes[alpha]);
        raw[alpha] = w.value();
      }
      break;
    }
    case LagrangeForm::iii: {
      std::vector<LogProduct> terms(count);
      double shift = -std::numeric_limits<double>::infinity();
      for (std::size_t alpha = 0; alpha < count; ++alpha) {
        for (std::size_t beta = 0; beta < count; ++beta) {
          if (beta != alpha) terms[alpha].div(mats.nodes[alpha] - mats.nodes[beta]);
        }
        terms[alpha].div(z - mats.nodes[alpha]);
        shift = std::max(shift, terms[alpha].log_mag());
      }
      cplx denom = 0.0;
      for (std::size_t alpha = 0; alpha < count; ++alpha) {
        raw[alpha] = terms[alpha].value(shift);
        denom += raw[alpha];
      }
      for (cplx& w : raw) w /= denom;
      break;
    }
  }

  BasisVector v(count, 0.0);
  for (std::size_t alpha = 0; alpha < count; ++alpha) {
    for (Eigen::Index n = 0; n <= static_cast<Eigen::Index>(alpha); ++n) {
      v[static_cast<std::size_t>(n)] += raw[alpha] * scaled_column(alpha, n);
    }
  }
  out.lambda0 = 1.0 / norm(v);
  for (cplx& x : v) x *= out.lambda0;
  for (std::size_t alpha = 0; alpha < count; ++alpha) {
    out.weights[alpha] = out.lambda0 * raw[alpha] / static_cast<double>(mats.lambda(0, static_cast<Eigen::Index>(alpha)));
  }
  out.assembled = std::move(v);
  return out;
}

LagrangeExpansion lagrange_expand(const ShiftCoefficients& sc, cplx z, LagrangeForm form, std::size_t N) {
  return lagrange_expand(special_state_matrices(sc, N), z, form);
}

}  // namespace tcs
