#include "tcs/error.hpp"

#include <sstream>

namespace tcs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "Domain";
    case ErrorCode::zero_off_diagonal: return "ZeroOffDiagonal";
    case ErrorCode::not_positive_semi_definite: return "NotPositiveSemiDefinite";
    case ErrorCode::polynomial_zero_at_origin: return "PolynomialZeroAtOrigin";
    case ErrorCode::inconsistent_diagonal_case: return "InconsistentDiagonalCase";
    case ErrorCode::zero_subdiagonal: return "ZeroSubdiagonal";
    case ErrorCode::not_converged: return "NotConverged";
    case ErrorCode::duplicate_nodes: return "DuplicateNodes";
    case ErrorCode::singular_diagonal: return "SingularDiagonal";
    case ErrorCode::pole_at_node: return "PoleAtNode";
    case ErrorCode::quadrature_unavailable: return "QuadratureUnavailable";
    case ErrorCode::support_truncated: return "SupportTruncated";
    case ErrorCode::unsupported_kind: return "UnsupportedKind";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::config: return "Config";
  }
  return "Unknown";
}

namespace {
std::string not_converged_message(std::size_t order, double tail) {
  std::ostringstream os;
  os << "series not converged at order " << order << " (tail estimate " << tail << ")";
  return os.str();
}
}  // namespace

NotConverged::NotConverged(std::size_t order, double tail)
    : Error(ErrorCode::not_converged, not_converged_message(order, tail)),
      order_(order),
      tail_(tail) {}

}  // namespace tcs
