#pragma once

#include <functional>
#include <ostream>

#include "tcs/cli/config.hpp"
#include "tcs/cli/output.hpp"
#include "tcs/error.hpp"

namespace tcs::cli {

/// 2 for configuration and domain errors, 3 for non-convergence.
int exit_code_for(const Error& e);

/// Smallest uniform grid (2048 points) outside which rho < 1e-12 of its peak.
/// `half_line` pins the left end at `lo`.
UniformGrid auto_grid(const std::function<double(double)>& rho, double lo, double hi, bool half_line,
                      std::size_t count = 2048);

/// n, a_n, b_n, c_n, d_n, p_n(0).
CsvTable cmd_factorize(const RunConfig& config);

/// x, rho. Header records model, z, order, form and the integral of rho.
CsvTable cmd_density(const RunConfig& config);

/// t, rbar, drbar_dt and, where a closed form exists, rbar_closed.
CsvTable cmd_evolve(const RunConfig& config);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcs::cli
