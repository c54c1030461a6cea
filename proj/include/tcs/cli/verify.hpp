#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tcs::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::string suite = "all";  // all | core | models
  std::uint64_t seed = 0;
  /// Test hook: perturb one closed-form Lambda-bar entry before the inverse check.
  std::optional<std::pair<std::size_t, std::size_t>> corrupt_lambda_bar;
};

/// TCS_SEED when set (decimal), otherwise a fixed default.
std::uint64_t default_seed();

std::vector<CheckResult> run_verify(const VerifyOptions& options);

/// Prints the report; returns 0 when every check passes, 1 otherwise.
int cmd_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace tcs::cli
