#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcs/tridiag.hpp"

namespace tcs {

/// Q_0(z)..Q_N(z). `terminated` is set when some d_n vanishes: the space
/// decouples there and the sequence stops early (q.size() <= N).
struct QSequence {
  std::vector<cplx> q;
  bool terminated = false;
};

QSequence q_values(const ShiftCoefficients& sc, cplx z, std::size_t N);

struct Normalization {
  double lambda0;
  double tail;  // |Q_N|^2 / sum |Q_n|^2
};

/// Throws NotConverged when the tail ratio exceeds `threshold`.
Normalization normalize(std::span<const cplx> q, double threshold);

/// |z) = lambda0 * sum_n Q_n(z) |phi_n>, truncated at `order`.
struct CoherentCoefficients {
  cplx z;
  double lambda0 = 0.0;
  std::vector<cplx> q;
  std::size_t order = 0;
  double tail_estimate = 0.0;
  bool terminated = false;

  BasisVector coefficients() const;
};

struct CoherentOptions {
  std::size_t initial_order = 16;
  std::size_t max_order = 4096;
  double tail_threshold = 1e-14;
};

/// Doubles the order from `initial_order` until the tail test passes.
CoherentCoefficients coherent_state(const ShiftSequence& shift, cplx z, const CoherentOptions& opts = {});

/// Fixed truncation order, still gated by `tail_threshold`.
CoherentCoefficients coherent_state_at_order(const ShiftSequence& shift, cplx z, std::size_t N,
                                             double tail_threshold = 1e-8);

enum class ResidualScope {
  interior,  // rows 0..size-3; the last two rows carry the truncation defect
  full,      // every row of the zero-padded vector, including the truncation defect
};

/// ||A v - z v|| over the rows selected by `scope`.
double annihilation_residual(const ShiftCoefficients& sc, std::span<const cplx> v, cplx z,
                             ResidualScope scope = ResidualScope::interior);

}  // namespace tcs
