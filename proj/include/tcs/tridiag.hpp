#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace tcs {

using cplx = std::complex<double>;

/// Expansion coefficients of a state in the basis {|phi_n>}; order = size() - 1.
using BasisVector = std::vector<cplx>;

inline constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

/// H_{n,m} = b_{n-1} delta_{n,m+1} + a_n delta_{n,m} + b_n delta_{n,m-1}.
/// Positive semi-definiteness is checked by `factorize`, not here.
class TridiagonalSpec {
 public:
  using Sequence = std::function<double(std::size_t)>;

  /// `extent` is the number of defined diagonal entries a_0..a_{extent-1};
  /// b_n is required for n < extent.
  TridiagonalSpec(Sequence a, Sequence b, std::string label, std::size_t extent = unbounded);

  static TridiagonalSpec from_vectors(std::vector<double> a, std::vector<double> b, std::string label);

  double a(std::size_t n) const;
  double b(std::size_t n) const;
  const std::string& label() const { return label_; }
  std::size_t extent() const { return extent_; }

 private:
  void check(std::size_t n) const;

  Sequence a_;
  Sequence b_;
  std::string label_;
  std::size_t extent_;
};

/// Coefficients of the forward-shift operator A|phi_n> = c_n|phi_n> + d_n|phi_{n-1}>,
/// n = 0..order, with d_0 = 0. Real-valued.
class ShiftCoefficients {
 public:
  ShiftCoefficients() = default;
  ShiftCoefficients(std::vector<double> c, std::vector<double> d);

  std::size_t order() const { return c_.size() - 1; }
  double c(std::size_t n) const { return c_.at(n); }
  double d(std::size_t n) const { return d_.at(n); }
  std::span<const double> c() const { return c_; }
  std::span<const double> d() const { return d_; }

  /// True when every c_n vanishes (the Hamiltonian is diagonal in the basis).
  bool diagonal() const;

 private:
  std::vector<double> c_;
  std::vector<double> d_;
};

/// Shift coefficients available at any order up to `max_order`, produced on demand.
class ShiftSequence {
 public:
  using Generator = std::function<ShiftCoefficients(std::size_t order)>;

  ShiftSequence(Generator generator, std::size_t max_order = unbounded);
  ShiftSequence(ShiftCoefficients finite);  // NOLINT: implicit by intent

  ShiftCoefficients take(std::size_t order) const;
  std::size_t max_order() const { return max_order_; }

 private:
  Generator generator_;
  std::size_t max_order_;
};

struct FactorizeOptions {
  double tol = 1e-10;
};

/// p_0(E)..p_N(E) of the three-term recursion.
std::vector<double> eval_polynomials(const TridiagonalSpec& spec, double E, std::size_t N);

/// c_n, d_n for n = 0..N with H = A^dagger A. Gauge: c_n >= 0, d_{n+1} = b_n / c_n.
ShiftCoefficients factorize(const TridiagonalSpec& spec, std::size_t N, const FactorizeOptions& opts = {});

struct TridiagonalEntries {
  std::vector<double> a;  // a_0..a_N
  std::vector<double> b;  // b_0..b_{N-1}
};

/// a_n = c_n^2 + d_n^2, b_n = c_n d_{n+1}.
TridiagonalEntries reconstruct(const ShiftCoefficients& sc);

/// (A v)_n = c_n v_n + d_{n+1} v_{n+1}, with v_{size} := 0.
BasisVector apply_A(const ShiftCoefficients& sc, std::span<const cplx> v);

/// (A^dagger v)_n = c_n v_n + d_n v_{n-1}; result has the size of v.
BasisVector apply_A_dagger(const ShiftCoefficients& sc, std::span<const cplx> v);

/// (H v)_n = b_{n-1} v_{n-1} + a_n v_n + b_n v_{n+1}, with v_{size} := 0.
BasisVector apply_H(const TridiagonalSpec& spec, std::span<const cplx> v);

double norm(std::span<const cplx> v);

}  // namespace tcs
