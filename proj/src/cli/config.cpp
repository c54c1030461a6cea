#include "tcs/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tcs/error.hpp"

namespace tcs::cli {

cplx parse_complex(std::string_view text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_real(text, "z"), 0.0};
  return {parse_real(text.substr(0, comma), "z"), parse_real(text.substr(comma + 1), "z")};
}

UniformGrid parse_grid(std::string_view text, std::string_view what) {
  const std::size_t a = text.find(':');
  const std::size_t b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos) {
    throw Error(ErrorCode::config, std::string(what) + ": expected start:stop:count");
  }
  const double start = parse_real(text.substr(0, a), what);
  const double stop = parse_real(text.substr(a + 1, b - a - 1), what);
  const double count = parse_real(text.substr(b + 1), what);
  if (count != std::floor(count) || count < 2.0) {
    throw Error(ErrorCode::config, std::string(what) + ": count must be an integer >= 2");
  }
  if (!(stop > start)) throw Error(ErrorCode::config, std::string(what) + ": stop must exceed start");
  return UniformGrid(start, stop, static_cast<std::size_t>(count));
}

void merge_config_file(const std::string& path, std::map<std::string, std::string>& values) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  for (auto& [key, value] : parse_key_values(ss.str())) {
    if (std::find(std::begin(config_keys), std::end(config_keys), key) == std::end(config_keys)) {
      throw Error(ErrorCode::config, path + ": unknown key '" + key + "'");
    }
    values.emplace(key, value);
  }
}

RunConfig build_run_config(const std::string& command, const std::map<std::string, std::string>& values) {
  RunConfig c;
  c.command = command;
  auto get = [&](const char* key) -> const std::string* {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  if (const auto* m = get("model")) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const char* key : {"V0", "alpha", "gamma", "omega", "ell", "lambda"}) {
      if (const auto* v = get(key)) pairs.emplace_back(key, *v);
    }
    c.model = ModelDescriptor::from_pairs(parse_model_kind(*m), pairs);
  }
  if (const auto* v = get("z")) c.z = parse_complex(*v);
  if (const auto* v = get("order")) {
    const double n = parse_real(*v, "order");
    if (n < 0 || n != std::floor(n) || n > 4096) throw Error(ErrorCode::config, "order must be an integer in [0, 4096]");
    c.order = static_cast<std::size_t>(n);
  }
  if (const auto* v = get("grid")) c.grid = parse_grid(*v, "grid");
  if (const auto* v = get("times")) c.times = parse_grid(*v, "times");
  if (const auto* v = get("t")) c.t = parse_real(*v, "t");
  if (const auto* v = get("form")) {
    if (*v != "direct" && *v != "i" && *v != "ii" && *v != "iii") {
      throw Error(ErrorCode::config, "form must be direct, i, ii or iii");
    }
    c.form = *v;
  }
  if (const auto* v = get("output")) c.output = *v;
  if (const auto* v = get("svg")) c.svg = *v;
  if (const auto* v = get("precision")) {
    const double p = parse_real(*v, "precision");
    if (p != std::floor(p) || p < 6 || p > 17) throw Error(ErrorCode::config, "precision must be an integer in [6, 17]");
    c.precision = static_cast<int>(p);
  }
  if (const auto* v = get("suite")) {
    if (*v != "all" && *v != "core" && *v != "models") throw Error(ErrorCode::config, "suite must be all, core or models");
    c.suite = *v;
  }
  return c;
}

ModelDescriptor resolve_model(const RunConfig& config) {
  if (!config.model) throw Error(ErrorCode::config, config.command + " needs --model");
  ModelDescriptor d = *config.model;
  const char* scale = nullptr;
  switch (d.kind) {
    case ModelKind::morse: scale = "gamma"; break;
    case ModelKind::radial_ho:
    case ModelKind::free_radial: scale = "lambda"; break;
    case ModelKind::ho1d: break;
  }
  if (scale && !d.has(scale)) {
    if (!config.z) throw Error(ErrorCode::config, std::string("either ") + scale + " or z is needed");
    d.validate(false);
    d = with_selected_scale(d, *config.z);
  }
  d.validate();
  return d;
}

}  // namespace tcs::cli
