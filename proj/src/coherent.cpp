#include "tcs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcs/error.hpp"

namespace tcs {

QSequence q_values(const ShiftCoefficients& sc, cplx z, std::size_t N) {
  if (N > sc.order()) {
    throw Error(ErrorCode::domain, "q_values: order exceeds available shift coefficients");
  }
  QSequence out;
  out.q.reserve(N + 1);
  out.q.push_back(1.0);
  for (std::size_t n = 1; n <= N; ++n) {
    const double dn = sc.d(n);
    if (dn == 0.0) {
      out.terminated = true;
      break;
    }
    out.q.push_back(out.q.back() * (z - sc.c(n - 1)) / dn);
  }
  return out;
}

Normalization normalize(std::span<const cplx> q, double threshold) {
  double sum = 0.0;
  for (const cplx& v : q) sum += std::norm(v);
  const double last = q.empty() ? 0.0 : std::norm(q.back());
  double tail = last / sum;
  if (!std::isfinite(sum) || !std::isfinite(tail)) tail = std::numeric_limits<double>::infinity();
  const std::size_t order = q.empty() ? 0 : q.size() - 1;
  if (!(tail <= threshold)) throw NotConverged(order, tail);
  return {1.0 / std::sqrt(sum), tail};
}

BasisVector CoherentCoefficients::coefficients() const {
  BasisVector out(q.size());
  for (std::size_t n = 0; n < q.size(); ++n) out[n] = lambda0 * q[n];
  return out;
}

namespace {

CoherentCoefficients assemble(cplx z, QSequence seq, double threshold) {
  CoherentCoefficients out;
  out.z = z;
  out.terminated = seq.terminated;
  // A terminated sequence is an exact eigenvector of the decoupled block.
  const auto norm = normalize(seq.q, seq.terminated ? std::numeric_limits<double>::infinity() : threshold);
  out.lambda0 = norm.lambda0;
  out.tail_estimate = seq.terminated ? 0.0 : norm.tail;
  out.q = std::move(seq.q);
  out.order = out.q.size() - 1;
  return out;
}

}  // namespace

CoherentCoefficients coherent_state(const ShiftSequence& shift, cplx z, const CoherentOptions& opts) {
  const std::size_t cap = std::min(opts.max_order, shift.max_order());
  std::size_t order = std::min(std::max<std::size_t>(opts.initial_order, 1), cap);
  for (;;) {
    QSequence seq = q_values(shift.take(order), z, order);
    if (seq.terminated) return assemble(z, std::move(seq), opts.tail_threshold);
    try {
      return assemble(z, std::move(seq), opts.tail_threshold);
    } catch (const NotConverged&) {
      if (order >= cap) throw;
    }
    order = std::min(order * 2, cap);
  }
}

CoherentCoefficients coherent_state_at_order(const ShiftSequence& shift, cplx z, std::size_t N,
                                             double tail_threshold) {
  return assemble(z, q_values(shift.take(N), z, N), tail_threshold);
}

double annihilation_residual(const ShiftCoefficients& sc, std::span<const cplx> v, cplx z,
                             ResidualScope scope) {
  const BasisVector av = apply_A(sc, v);
  std::size_t rows = v.size();
  if (scope == ResidualScope::interior) rows = rows > 2 ? rows - 2 : 0;
  double sum = 0.0;
  for (std::size_t n = 0; n < rows; ++n) sum += std::norm(av[n] - z * v[n]);
  return std::sqrt(sum);
}

}  // namespace tcs
