#include "tcs/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <map>

#include "tcs/cli/verify.hpp"
#include "tcs/coherent.hpp"
#include "tcs/special_states.hpp"

namespace tcs::cli {

int exit_code_for(const Error& e) { return e.code() == ErrorCode::not_converged ? 3 : 2; }

UniformGrid auto_grid(const std::function<double(double)>& rho, double lo, double hi, bool half_line,
                      std::size_t count) {
  constexpr std::size_t samples = 801;
  constexpr double rel = 1e-12;
  std::vector<double> xs(samples), ys(samples);
  for (int pass = 0; pass < 40; ++pass) {
    double peak = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
      ys[i] = rho(xs[i]);
      peak = std::max(peak, ys[i]);
    }
    if (!(peak > 0.0)) throw Error(ErrorCode::support_truncated, "auto grid: density vanishes on the search interval");
    const double width = hi - lo;
    bool grown = false;
    if (!half_line && ys.front() > rel * peak) {
      lo -= width;
      grown = true;
    }
    if (ys.back() > rel * peak) {
      hi += width;
      grown = true;
    }
    if (grown) continue;
    std::size_t first = 0, last = samples - 1;
    while (first < samples && ys[first] <= rel * peak) ++first;
    while (last > 0 && ys[last] <= rel * peak) --last;
    const double new_lo = half_line ? lo : xs[first == 0 ? 0 : first - 1];
    const double new_hi = xs[std::min(last + 1, samples - 1)];
    return UniformGrid(new_lo, new_hi, count);
  }
  throw Error(ErrorCode::support_truncated, "auto grid: support keeps growing");
}

namespace {

std::string describe(const ModelDescriptor& d) {
  std::string s = fmt::format("model={}", to_string(d.kind));
  for (const auto& [k, v] : d.params) s += fmt::format(" {}={:.15g}", k, v);
  return s;
}

std::string describe(cplx z) { return fmt::format("z={:.15g},{:.15g}", z.real(), z.imag()); }

struct SearchInterval {
  double lo;
  double hi;
  bool half_line;
};

SearchInterval search_interval(const ModelDescriptor& d) {
  switch (d.kind) {
    case ModelKind::morse: return {-1.0 / d.param("alpha"), 4.0 / d.param("alpha"), false};
    case ModelKind::radial_ho:
    case ModelKind::free_radial: return {0.0, 5.0 / d.param("lambda"), true};
    case ModelKind::ho1d: return {-5.0 / std::sqrt(d.param("omega")), 5.0 / std::sqrt(d.param("omega")), false};
  }
  return {0.0, 1.0, false};
}

cplx require_z(const RunConfig& c) {
  if (!c.z) throw Error(ErrorCode::config, c.command + " needs --z");
  return *c.z;
}

CoherentCoefficients build_coherent(const Model& m, const RunConfig& c) {
  const cplx z = require_z(c);
  return c.order ? coherent_state_at_order(m.shift, z, *c.order) : coherent_state(m.shift, z);
}

std::optional<ClosedFormOracle> try_oracle(const Model& m, cplx z) {
  if (!m.oracle) return std::nullopt;
  try {
    return m.oracle(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::out_of_domain) return std::nullopt;
    throw;
  }
}

QuadratureRule synthesis_rule(const SpectralMeasure& measure, double t, double xmax) {
  if (!measure.continuous) return {};
  const ContinuousPart& part = *measure.continuous;
  return part.rule_for ? part.rule_for(t, xmax) : part.rule;
}

}  // namespace

CsvTable cmd_factorize(const RunConfig& c) {
  const ModelDescriptor d = resolve_model(c);
  const Model m = make_model(d);
  const std::size_t N = c.order.value_or(10);
  const ShiftCoefficients sc = m.shift.take(N);
  CsvTable table;
  table.metadata.push_back(describe(d));
  table.metadata.push_back(fmt::format("order={}", N));
  table.header = {"n", "a_n", "b_n", "c_n", "d_n", "p_n(0)"};
  double defect = 0.0;
  double p_prev = 0.0, p = 1.0;
  bool broken = false;
  for (std::size_t n = 0; n <= N; ++n) {
    const double a = m.spec.a(n), b = m.spec.b(n);
    const double cn = sc.c(n), dn = sc.d(n);
    defect = std::max(defect, std::abs(a - (cn * cn + dn * dn)));
    if (n < N) defect = std::max(defect, std::abs(b - cn * sc.d(n + 1)));
    table.rows.push_back({static_cast<double>(n), a, b, cn, dn, broken ? std::nan("") : p});
    if (b == 0.0) {
      broken = true;
    } else {
      const double next = ((0.0 - a) * p - (n == 0 ? 0.0 : m.spec.b(n - 1) * p_prev)) / b;
      p_prev = p;
      p = next;
    }
  }
  table.metadata.push_back(fmt::format("reconstruct_defect={:.3e}", defect));
  return table;
}

CsvTable cmd_density(const RunConfig& c) {
  const ModelDescriptor d = resolve_model(c);
  const Model m = make_model(d);
  const cplx z = require_z(c);
  PositionFunction psi;
  std::size_t order = 0;
  double lambda0 = 0.0;
  if (c.form == "direct") {
    const CoherentCoefficients coh = build_coherent(m, c);
    order = coh.order;
    lambda0 = coh.lambda0;
    if (c.t == 0.0) {
      psi = basis_expansion(m.basis, coh.coefficients());
    } else {
      if (!m.measure) throw Error(ErrorCode::config, "model " + std::string(to_string(d.kind)) + " has no spectral measure");
      const auto oracle = try_oracle(m, z);
      const SearchInterval s = search_interval(d);
      const double xmax = oracle ? auto_grid([&](double x) { return oracle->rho(x, c.t); }, s.lo, s.hi, s.half_line).stop
                                 : (c.grid ? c.grid->stop : s.hi * 4.0);
      psi = evolve(*m.measure, coh, m.shift.take(coh.order), c.t, synthesis_rule(*m.measure, c.t, xmax)).psi;
    }
  } else {
    if (c.t != 0.0) throw Error(ErrorCode::config, "Lagrange forms describe t = 0 only");
    const LagrangeForm form = c.form == "i" ? LagrangeForm::i : c.form == "ii" ? LagrangeForm::ii : LagrangeForm::iii;
    order = c.order ? *c.order : coherent_state(m.shift, z).order;
    const LagrangeExpansion e = lagrange_expand(m.shift.take(order), z, form, order);
    lambda0 = e.lambda0;
    psi = basis_expansion(m.basis, e.assembled);
  }
  const SearchInterval s = search_interval(d);
  const UniformGrid grid =
      c.grid ? *c.grid : auto_grid([&](double x) { return std::norm(psi(x)); }, s.lo, s.hi, s.half_line);
  const DensityProfile prof = density(psi, grid);

  CsvTable table;
  table.metadata.push_back(describe(d));
  table.metadata.push_back(describe(z));
  table.metadata.push_back(fmt::format("order={}", order));
  table.metadata.push_back(fmt::format("form={}", c.form));
  table.metadata.push_back(fmt::format("t={:.15g}", c.t));
  table.metadata.push_back(fmt::format("lambda0={:.15g}", lambda0));
  table.metadata.push_back(fmt::format("integral={:.15g}", prof.integral));
  table.header = {"x", "rho"};
  for (std::size_t i = 0; i < prof.x.size(); ++i) table.rows.push_back({prof.x[i], prof.rho[i]});
  return table;
}

CsvTable cmd_evolve(const RunConfig& c) {
  const ModelDescriptor d = resolve_model(c);
  const Model m = make_model(d);
  const cplx z = require_z(c);
  if (!c.times) throw Error(ErrorCode::config, "evolve needs --times start:stop:count");
  if (!m.measure) throw Error(ErrorCode::config, "model " + std::string(to_string(d.kind)) + " has no spectral measure");
  const CoherentCoefficients coh = build_coherent(m, c);
  const ShiftCoefficients sc = m.shift.take(coh.order);
  const auto oracle = try_oracle(m, z);
  const std::vector<double> ts = c.times->points();
  const SearchInterval s = search_interval(d);

  UniformGrid grid;
  if (c.grid) {
    grid = *c.grid;
  } else {
    double lo = s.lo, hi = s.hi;
    bool first = true;
    // The closed form is cheap, so every time is scanned; otherwise the ends and the middle.
    const std::vector<double> scan = oracle ? ts : std::vector<double>{ts.front(), ts[ts.size() / 2], ts.back()};
    for (double t : scan) {
      std::function<double(double)> rho;
      PositionFunction psi;
      if (oracle) {
        rho = [&, t](double x) { return oracle->rho(x, t); };
      } else {
        psi = evolve(*m.measure, coh, sc, t, synthesis_rule(*m.measure, t, s.hi * 4.0)).psi;
        rho = [&](double x) { return std::norm(psi(x)); };
      }
      const UniformGrid g = auto_grid(rho, s.lo, s.hi, s.half_line);
      lo = first ? g.start : std::min(lo, g.start);
      hi = first ? g.stop : std::max(hi, g.stop);
      first = false;
    }
    grid = UniformGrid(lo, hi, 2048);
  }

  std::vector<double> rbar(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const EvolvedState st = evolve(*m.measure, coh, sc, ts[i], synthesis_rule(*m.measure, ts[i], std::max(std::abs(grid.start), std::abs(grid.stop))));
    rbar[i] = mean_position(density(st.psi, grid));
  }
  const double h = c.times->step();
  CsvTable table;
  table.metadata.push_back(describe(d));
  table.metadata.push_back(describe(z));
  table.metadata.push_back(fmt::format("order={}", coh.order));
  table.metadata.push_back(fmt::format("grid={:.15g}:{:.15g}:{}", grid.start, grid.stop, grid.count));
  table.metadata.push_back(oracle ? "rbar_closed: closed-form mean position" : "rbar_closed: unavailable for this z");
  table.header = {"t", "rbar", "drbar_dt"};
  if (oracle) table.header.push_back("rbar_closed");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double deriv;
    if (i == 0) deriv = (rbar[1] - rbar[0]) / h;
    else if (i + 1 == ts.size()) deriv = (rbar[i] - rbar[i - 1]) / h;
    else deriv = (rbar[i + 1] - rbar[i - 1]) / (2.0 * h);
    std::vector<double> row = {ts[i], rbar[i], deriv};
    if (oracle) row.push_back(oracle->mean(ts[i]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

void emit(const CsvTable& table, const RunConfig& c, std::ostream& out, const std::string& title) {
  if (c.output.empty()) {
    table.write(out, c.precision);
  } else {
    std::ofstream f(c.output);
    if (!f) throw Error(ErrorCode::config, "cannot write '" + c.output + "'");
    table.write(f, c.precision);
  }
  if (!c.svg.empty()) {
    std::ofstream f(c.svg);
    if (!f) throw Error(ErrorCode::config, "cannot write '" + c.svg + "'");
    std::vector<double> x, y;
    for (const auto& row : table.rows) {
      x.push_back(row[0]);
      y.push_back(row[1]);
    }
    write_svg(f, x, y, title);
  }
}

void report(std::ostream& err, std::string_view code, const std::string& message) {
  std::string one_line = message;
  std::replace(one_line.begin(), one_line.end(), '\n', ' ');
  err << "ERROR:" << code << ":" << one_line << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent states of tridiagonal Hamiltonians"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::string config_path;
  std::string corrupt;

  auto add_common = [&](CLI::App* sub) {
    for (std::string_view key : config_keys) {
      if (key == "suite") continue;
      const std::string name(key);
      sub->add_option_function<std::string>("--" + name, [&flags, name](const std::string& v) { flags[name] = v; },
                                            "see README");
    }
    sub->add_option("--config", config_path, "key=value file; flags override it");
  };
  CLI::App* fac = app.add_subcommand("factorize", "tridiagonal and shift coefficients as CSV");
  CLI::App* den = app.add_subcommand("density", "coherent-state density as CSV");
  CLI::App* evo = app.add_subcommand("evolve", "mean position over a time grid as CSV");
  CLI::App* ver = app.add_subcommand("verify", "run the property suites");
  for (CLI::App* sub : {fac, den, evo}) add_common(sub);
  ver->add_option_function<std::string>("--suite", [&](const std::string& v) { flags["suite"] = v; }, "all, core or models");
  ver->add_option("--config", config_path, "key=value file");
  ver->add_option("--corrupt-lambda-bar", corrupt, "test hook: row,col")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, "Config", e.what());
    return 2;
  }

  try {
    if (!config_path.empty()) merge_config_file(config_path, flags);
    CLI::App* sub = app.get_subcommands().front();
    const RunConfig config = build_run_config(sub->get_name(), flags);
    if (sub == ver) {
      VerifyOptions opts;
      opts.suite = config.suite;
      opts.seed = default_seed();
      if (!corrupt.empty()) {
        const std::size_t comma = corrupt.find(',');
        if (comma == std::string::npos) throw Error(ErrorCode::config, "--corrupt-lambda-bar expects row,col");
        opts.corrupt_lambda_bar = {static_cast<std::size_t>(parse_real(corrupt.substr(0, comma), "row")),
                                   static_cast<std::size_t>(parse_real(corrupt.substr(comma + 1), "col"))};
      }
      return cmd_verify(opts, out);
    }
    if (sub == fac) emit(cmd_factorize(config), config, out, "factorize");
    if (sub == den) emit(cmd_density(config), config, out, "density");
    if (sub == evo) emit(cmd_evolve(config), config, out, "mean position");
    return 0;
  } catch (const Error& e) {
    report(err, to_string(e.code()), e.what());
    return exit_code_for(e);
  }
}

}  // namespace tcs::cli
