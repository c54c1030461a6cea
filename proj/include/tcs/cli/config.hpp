#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "tcs/evolution.hpp"
#include "tcs/models.hpp"

namespace tcs::cli {

/// Keys accepted in --config files; flags use the same names.
inline constexpr std::string_view config_keys[] = {"model", "V0",    "alpha", "gamma",  "omega", "ell",
                                                   "lambda", "z",    "order", "grid",   "times", "t",
                                                   "form",  "output", "svg",  "precision", "suite"};

struct RunConfig {
  std::string command;
  std::optional<ModelDescriptor> model;
  std::optional<cplx> z;
  std::optional<std::size_t> order;
  std::optional<UniformGrid> grid;
  std::optional<UniformGrid> times;
  double t = 0.0;
  std::string form = "direct";  // direct | i | ii | iii
  std::string output;           // empty: standard output
  std::string svg;
  int precision = 12;
  std::string suite = "all";
};

/// "re" or "re,im".
cplx parse_complex(std::string_view text);

/// "start:stop:count" with count >= 2.
UniformGrid parse_grid(std::string_view text, std::string_view what);

/// Reads a key=value file into `values`; keys already present are kept (flags win).
void merge_config_file(const std::string& path, std::map<std::string, std::string>& values);

/// Validates and converts. Throws Error(config) or Error(domain).
RunConfig build_run_config(const std::string& command, const std::map<std::string, std::string>& values);

/// Model descriptor with the free scale chosen from z when the scale key is absent.
ModelDescriptor resolve_model(const RunConfig& config);

}  // namespace tcs::cli
