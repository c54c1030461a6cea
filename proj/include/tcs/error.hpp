#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcs {

enum class ErrorCode {
  domain,
  zero_off_diagonal,
  not_positive_semi_definite,
  polynomial_zero_at_origin,
  inconsistent_diagonal_case,
  zero_subdiagonal,
  not_converged,
  duplicate_nodes,
  singular_diagonal,
  pole_at_node,
  quadrature_unavailable,
  support_truncated,
  unsupported_kind,
  out_of_domain,
  config,
};

/// Machine-readable name used in `ERROR:<code>:` diagnostics.
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown when a truncated series fails its tail test at the largest order allowed.
class NotConverged : public Error {
 public:
  NotConverged(std::size_t order, double tail);

  std::size_t order() const noexcept { return order_; }
  double tail() const noexcept { return tail_; }

 private:
  std::size_t order_;
  double tail_;
};

}  // namespace tcs
