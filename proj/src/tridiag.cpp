#include "tcs/tridiag.hpp"

#include <cmath>
#include <string>

#include "tcs/error.hpp"

namespace tcs {

TridiagonalSpec::TridiagonalSpec(Sequence a, Sequence b, std::string label, std::size_t extent)
    : a_(std::move(a)), b_(std::move(b)), label_(std::move(label)), extent_(extent) {}

TridiagonalSpec TridiagonalSpec::from_vectors(std::vector<double> a, std::vector<double> b,
                                              std::string label) {
  if (b.size() + 1 < a.size()) {
    throw Error(ErrorCode::domain, "TridiagonalSpec: need at least a.size() - 1 off-diagonal entries");
  }
  const std::size_t extent = a.size();
  return TridiagonalSpec([a = std::move(a)](std::size_t n) { return a[n]; },
                         [b = std::move(b)](std::size_t n) { return n < b.size() ? b[n] : 0.0; },
                         std::move(label), extent);
}

void TridiagonalSpec::check(std::size_t n) const {
  if (n >= extent_) {
    throw Error(ErrorCode::domain, "TridiagonalSpec '" + label_ + "': index " + std::to_string(n) +
                                       " beyond defined extent " + std::to_string(extent_));
  }
}

double TridiagonalSpec::a(std::size_t n) const {
  check(n);
  return a_(n);
}

double TridiagonalSpec::b(std::size_t n) const {
  check(n);
  return b_(n);
}

ShiftCoefficients::ShiftCoefficients(std::vector<double> c, std::vector<double> d)
    : c_(std::move(c)), d_(std::move(d)) {
  if (c_.empty() || c_.size() != d_.size()) {
    throw Error(ErrorCode::domain, "ShiftCoefficients: c and d must be non-empty and equally long");
  }
  if (d_[0] != 0.0) throw Error(ErrorCode::domain, "ShiftCoefficients: d_0 must be 0");
}

bool ShiftCoefficients::diagonal() const {
  for (double v : c_) {
    if (v != 0.0) return false;
  }
  return true;
}

ShiftSequence::ShiftSequence(Generator generator, std::size_t max_order)
    : generator_(std::move(generator)), max_order_(max_order) {}

ShiftSequence::ShiftSequence(ShiftCoefficients finite) : max_order_(finite.order()) {
  generator_ = [sc = std::move(finite)](std::size_t order) {
    std::vector<double> c(sc.c().begin(), sc.c().begin() + static_cast<std::ptrdiff_t>(order + 1));
    std::vector<double> d(sc.d().begin(), sc.d().begin() + static_cast<std::ptrdiff_t>(order + 1));
    return ShiftCoefficients(std::move(c), std::move(d));
  };
}

ShiftCoefficients ShiftSequence::take(std::size_t order) const {
  if (order > max_order_) {
    throw Error(ErrorCode::domain, "ShiftSequence: order " + std::to_string(order) +
                                       " exceeds available order " + std::to_string(max_order_));
  }
  return generator_(order);
}

std::vector<double> eval_polynomials(const TridiagonalSpec& spec, double E, std::size_t N) {
  std::vector<double> p(N + 1);
  p[0] = 1.0;
  for (std::size_t n = 0; n < N; ++n) {
    const double bn = spec.b(n);
    if (bn == 0.0) {
      throw Error(ErrorCode::zero_off_diagonal, "eval_polynomials: b_" + std::to_string(n) + " = 0");
    }
    const double below = n == 0 ? 0.0 : spec.b(n - 1) * p[n - 1];
    p[n + 1] = ((E - spec.a(n)) * p[n] - below) / bn;
  }
  return p;
}

ShiftCoefficients factorize(const TridiagonalSpec& spec, std::size_t N, const FactorizeOptions& opts) {
  bool all_zero = true;
  for (std::size_t n = 0; n <= N && all_zero; ++n) all_zero = spec.b(n) == 0.0;

  std::vector<double> c(N + 1, 0.0), d(N + 1, 0.0);
  if (all_zero) {
    for (std::size_t n = 0; n <= N; ++n) {
      const double an = spec.a(n);
      if (an < -opts.tol * std::max(1.0, std::abs(an))) {
        throw Error(ErrorCode::not_positive_semi_definite,
                    "factorize: a_" + std::to_string(n) + " < 0 in diagonal case");
      }
      if (n == 0 && an > opts.tol) {
        throw Error(ErrorCode::inconsistent_diagonal_case,
                    "factorize: diagonal case requires a_0 = 0 since c_n = 0 and d_0 = 0");
      }
      d[n] = n == 0 ? 0.0 : std::sqrt(std::max(an, 0.0));
    }
    return ShiftCoefficients(std::move(c), std::move(d));
  }

  // ratio_n = p_{n+1}(0) / p_n(0), carried directly to avoid overflow.
  double prev_ratio = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    const double bn = spec.b(n);
    const double an = spec.a(n);
    if (bn == 0.0) {
      throw Error(ErrorCode::zero_off_diagonal, "factorize: b_" + std::to_string(n) + " = 0");
    }
    const double below = n == 0 ? 0.0 : spec.b(n - 1) / prev_ratio;
    const double ratio = (-an - below) / bn;
    if (ratio == 0.0 || !std::isfinite(ratio)) {
      throw Error(ErrorCode::polynomial_zero_at_origin,
                  "factorize: p_" + std::to_string(n + 1) + "(0) = 0");
    }
    const double c2 = -bn * ratio;
    const double scale = std::max(1.0, std::abs(an));
    if (c2 < -opts.tol * scale) {
      throw Error(ErrorCode::not_positive_semi_definite,
                  "factorize: c_" + std::to_string(n) + "^2 = " + std::to_string(c2) + " < 0");
    }
    const double d2 = -bn / ratio;
    if (d2 < -opts.tol * scale) {
      throw Error(ErrorCode::not_positive_semi_definite,
                  "factorize: d_" + std::to_string(n + 1) + "^2 = " + std::to_string(d2) + " < 0");
    }
    c[n] = std::sqrt(std::max(c2, 0.0));
    if (n + 1 <= N) {
      if (c[n] == 0.0) {
        throw Error(ErrorCode::inconsistent_diagonal_case,
                    "factorize: c_" + std::to_string(n) + " = 0 but b_" + std::to_string(n) + " != 0");
      }
      d[n + 1] = bn / c[n];
    }
    prev_ratio = ratio;
  }
  return ShiftCoefficients(std::move(c), std::move(d));
}

TridiagonalEntries reconstruct(const ShiftCoefficients& sc) {
  const std::size_t N = sc.order();
  TridiagonalEntries out;
  out.a.resize(N + 1);
  out.b.resize(N);
  for (std::size_t n = 0; n <= N; ++n) {
    out.a[n] = sc.c(n) * sc.c(n) + sc.d(n) * sc.d(n);
    if (n < N) out.b[n] = sc.c(n) * sc.d(n + 1);
  }
  return out;
}

namespace {
void require_fits(const ShiftCoefficients& sc, std::size_t size) {
  if (size > sc.order() + 1) {
    throw Error(ErrorCode::domain, "vector order " + std::to_string(size - 1) +
                                       " exceeds shift-coefficient order " + std::to_string(sc.order()));
  }
}
}  // namespace

BasisVector apply_A(const ShiftCoefficients& sc, std::span<const cplx> v) {
  require_fits(sc, v.size());
  BasisVector out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    out[n] = sc.c(n) * v[n];
    if (n + 1 < v.size()) out[n] += sc.d(n + 1) * v[n + 1];
  }
  return out;
}

BasisVector apply_A_dagger(const ShiftCoefficients& sc, std::span<const cplx> v) {
  require_fits(sc, v.size());
  BasisVector out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    out[n] = sc.c(n) * v[n];
    if (n > 0) out[n] += sc.d(n) * v[n - 1];
  }
  return out;
}

BasisVector apply_H(const TridiagonalSpec& spec, std::span<const cplx> v) {
  BasisVector out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) {
    out[n] = spec.a(n) * v[n];
    if (n > 0) out[n] += spec.b(n - 1) * v[n - 1];
    if (n + 1 < v.size()) out[n] += spec.b(n) * v[n + 1];
  }
  return out;
}

double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace tcs
