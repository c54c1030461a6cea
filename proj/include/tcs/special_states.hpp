#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tcs/tridiag.hpp"

namespace tcs {

/// Extended precision: Lambda-bar entries grow like binomials in N, so a
/// double-precision Lambda-bar Lambda product loses about log10 max|Lambda-bar| digits.
using ExtMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// Special coherent states |c_alpha) = sum_{n<=alpha} Lambda_{n,alpha} |phi_n>
/// and the closed-form inverse Lambda-bar. Both upper triangular.
struct SpecialStateMatrices {
  std::vector<double> nodes;  // c_0..c_N
  ExtMatrix lambda;           // (n, alpha)
  ExtMatrix lambda_bar;       // (alpha, m)

  std::size_t order() const { return nodes.size() - 1; }
};

/// Throws DuplicateNodes when |c_a - c_b| <= 1e-8 (1 + max |c|).
void require_distinct_nodes(std::span<const double> nodes);

ExtMatrix build_lambda(const ShiftCoefficients& sc, std::size_t N);

/// Lambda-bar_{alpha,m} = (1/Lambda_{alpha,alpha}) prod_{j=alpha+1}^{m} d_j / (c_alpha - c_j).
ExtMatrix build_lambda_bar(const ShiftCoefficients& sc, const ExtMatrix& lambda);

SpecialStateMatrices special_state_matrices(const ShiftCoefficients& sc, std::size_t N);

struct SummationSides {
  cplx lhs;
  cplx rhs;
};

/// Both sides of
///   1 + sum_{n=1}^{gamma} prod_{j=alpha}^{n+alpha-1} (z - c_j)/(c_alpha - c_{j+1})
///     = prod_{k=alpha+1}^{gamma+alpha} (z - c_k)/(c_alpha - c_k).
/// Needs nodes c_alpha..c_{alpha+gamma}, gamma >= 1.
SummationSides summation_identity_check(std::span<const double> nodes, cplx z, std::size_t alpha,
                                        std::size_t gamma);

/// K_alpha(z) = (lambda0_z / Lambda_{0,alpha}) prod_{k != alpha, k <= N} (z - c_k)/(c_alpha - c_k).
cplx kernel_K(const SpecialStateMatrices& mats, cplx z, std::size_t alpha, double lambda0_z);

enum class LagrangeForm { i, ii, iii };

std::string_view to_string(LagrangeForm form);

struct LagrangeExpansion {
  cplx z;
  LagrangeForm form = LagrangeForm::i;
  std::vector<cplx> weights;  // coefficient of |c_alpha) in the assembled state
  std::size_t node_count = 0;
  double lambda0 = 0.0;
  bool at_node = false;  // z within 1e-10 of a node: the special state is returned
  BasisVector assembled;
};

/// Rebuild |z) from |c_0)..|c_N) as a Lagrange interpolant in one of three forms.
LagrangeExpansion lagrange_expand(const SpecialStateMatrices& mats, cplx z, LagrangeForm form);
LagrangeExpansion lagrange_expand(const ShiftCoefficients& sc, cplx z, LagrangeForm form, std::size_t N);

}  // namespace tcs
