#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tcs/cli/commands.hpp"
#include "tcs/cli/config.hpp"
#include "tcs/cli/output.hpp"

using namespace tcs;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tcs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::vector<std::string> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    FAIL("no column " << name);
    return 0;
  }
  std::string meta(const std::string& key) const {
    for (const auto& m : metadata) {
      if (m.rfind(key + "=", 0) == 0) return m.substr(key.size() + 1);
    }
    return {};
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      csv.metadata.push_back(line.substr(2));
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      std::vector<double> row;
      for (const auto& cell : split(line)) row.push_back(std::stod(cell));
      csv.rows.push_back(row);
    }
  }
  return csv;
}

const std::vector<std::string> morse_flags = {"--model", "morse", "--V0", "10", "--alpha", "1"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<std::string> extra) {
  base.insert(base.end(), extra);
  return base;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "tcs_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("factorize emits the Morse table") {
  auto args = with(morse_flags, {"--gamma", "3", "--order", "10"});
  args.insert(args.begin(), "factorize");
  const RunResult r = run_cli(args);
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 11);
  const double D = oracle::morse_D(10.0, 1.0);
  for (const auto& row : csv.rows) {
    const double n = row[csv.column("n")];
    CHECK(row[csv.column("c_n")] == doctest::Approx((n + 3.5 - D) / std::sqrt(2.0)).epsilon(1e-11));
    CHECK(row[csv.column("d_n")] == doctest::Approx(-std::sqrt(n * (n + 6.0)) / std::sqrt(2.0)).epsilon(1e-11));
  }
  CHECK(std::stod(csv.meta("reconstruct_defect")) <= 1e-12);
}

TEST_CASE("diagonal model factorizes with c = 0") {
  const RunResult r = run_cli({"factorize", "--model", "ho1d", "--omega", "2", "--order", "5"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  for (const auto& row : csv.rows) {
    CHECK(row[csv.column("c_n")] == 0.0);
    CHECK(row[csv.column("d_n")] == doctest::Approx(std::sqrt(2.0 * row[0])));
  }
}

TEST_CASE("configuration and domain errors exit 2 with one diagnostic line") {
  auto bad = with(morse_flags, {"--gamma", "-1"});
  bad.insert(bad.begin(), "factorize");
  RunResult r = run_cli(bad);
  CHECK(r.code == 2);
  CHECK(r.err.rfind("ERROR:", 0) == 0);
  CHECK(r.err.find("gamma > -1/2") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  CHECK(r.out.empty());

  CHECK(run_cli({"factorize", "--model", "coulomb", "--z", "1"}).code == 2);
  CHECK(run_cli({"density", "--bogus", "1"}).err.rfind("ERROR:Config:", 0) == 0);
  CHECK(run_cli({"density", "--model", "ho1d", "--omega", "1", "--z", "1", "--precision", "40"}).code == 2);

  auto one_time = with(morse_flags, {"--z", "0.83", "--times", "0:1:1"});
  one_time.insert(one_time.begin(), "evolve");
  CHECK(run_cli(one_time).code == 2);

  // all nodes coincide at lambda = sqrt(omega)
  const RunResult dup = run_cli({"density", "--model", "radial_ho", "--omega", "2", "--ell", "1", "--lambda",
                                 "1.4142135623730951", "--z", "0", "--form", "i", "--order", "6"});
  CHECK(dup.code == 2);
  CHECK(dup.err.find("DuplicateNodes") != std::string::npos);
}

TEST_CASE("non-convergence exits 3") {
  const RunResult r = run_cli({"density", "--model", "free_radial", "--ell", "1", "--lambda", "2", "--z", "0"});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("ERROR:NotConverged:", 0) == 0);
}

TEST_CASE("density forms agree and the direct density is normalized") {
  auto base = with(morse_flags, {"--z", "0.83", "--order", "10", "--grid", "-2:6:401"});
  base.insert(base.begin(), "density");
  const Csv direct = parse_csv(run_cli(base).out);
  for (const char* form : {"i", "ii", "iii"}) {
    auto args = base;
    args.insert(args.end(), {"--form", form});
    const RunResult r = run_cli(args);
    REQUIRE(r.code == 0);
    const Csv csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == direct.rows.size());
    CHECK(csv.meta("form") == form);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) CHECK(std::abs(csv.rows[i][1] - direct.rows[i][1]) <= 1e-6);
  }
}

TEST_CASE("oscillator density is centred at sqrt(2) z / omega") {
  const RunResult r = run_cli({"density", "--model", "ho1d", "--omega", "1", "--z", "1", "--order", "32"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  CHECK(std::stod(csv.meta("integral")) == doctest::Approx(1.0).epsilon(1e-6));
  double mean = 0.0, h = csv.rows[1][0] - csv.rows[0][0];
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    mean += (i == 0 || i + 1 == csv.rows.size() ? 0.5 : 1.0) * csv.rows[i][0] * csv.rows[i][1];
  }
  CHECK(mean * h == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("evolve tracks the closed-form mean position") {
  const RunResult r = run_cli({"evolve", "--model", "radial_ho", "--omega", "2", "--ell", "1", "--z", "3", "--times",
                               "0:1.5707963267948966:9"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 9);
  const std::size_t rb = csv.column("rbar"), rc = csv.column("rbar_closed");
  for (const auto& row : csv.rows) CHECK(std::abs(row[rb] - row[rc]) <= 1e-6 * row[rc]);
  // period pi / omega
  CHECK(csv.rows.front()[rb] == doctest::Approx(csv.rows.back()[rb]).epsilon(1e-8));
}

TEST_CASE("output is bit-stable and the SVG follows the CSV") {
  const auto dir = scratch_dir();
  const std::string svg = (dir / "rho.svg").string(), csv_path = (dir / "rho.csv").string();
  auto args = with(morse_flags, {"--z", "0.83", "--grid", "-2:6:257", "--svg", svg});
  args.insert(args.begin(), "density");
  const RunResult a = run_cli(args), b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  std::ifstream f(svg);
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(text.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  const auto open = text.find("<polyline");
  REQUIRE(open != std::string::npos);
  const auto pts = text.find("points=\"", open) + 8;
  const std::string points = text.substr(pts, text.find('"', pts) - pts);
  std::stringstream ss(points);
  std::string token;
  std::size_t count = 0;
  while (ss >> token) ++count;
  CHECK(count == parse_csv(a.out).rows.size());

  auto to_file = args;
  to_file.insert(to_file.end(), {"--output", csv_path});
  CHECK(run_cli(to_file).code == 0);
  std::ifstream g(csv_path);
  const std::string written((std::istreambuf_iterator<char>(g)), std::istreambuf_iterator<char>());
  CHECK(written == a.out);
}

TEST_CASE("config file values yield to flags") {
  const auto path = (scratch_dir() / "run.conf").string();
  {
    std::ofstream f(path);
    f << "# morse run\nmodel = morse\nV0 = 10\nalpha = 1\nz = 0.5\norder = 10\ngrid = -2:6:101\n";
  }
  const Csv from_file = parse_csv(run_cli({"density", "--config", path}).out);
  CHECK(from_file.meta("z") == "0.5,0");
  const Csv overridden = parse_csv(run_cli({"density", "--config", path, "--z", "0.83"}).out);
  CHECK(overridden.meta("z") == "0.83,0");
  CHECK(overridden.rows.size() == 101);
}

TEST_CASE("verify reports and exits by outcome") {
  ::setenv("TCS_SEED", "42", 1);
  const RunResult ok = run_cli({"verify", "--suite", "core"});
  ::unsetenv("TCS_SEED");
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("seed 42\n", 0) == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const RunResult broken = run_cli({"verify", "--suite", "core", "--corrupt-lambda-bar", "2,5"});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("FAIL core: closed-form Lambda-bar inverts Lambda") != std::string::npos);
  CHECK(broken.out.find("Lambda_bar(2,5)") != std::string::npos);
}

TEST_CASE("number formatting and grid parsing") {
  CHECK(cli::format_number(0.0, 12) == "0");
  CHECK(cli::format_number(std::nan(""), 12) == "nan");
  CHECK(cli::format_number(0.1, 17) == "0.10000000000000001");
  const UniformGrid g = cli::parse_grid("-1:2:7", "grid");
  CHECK(g.count == 7);
  CHECK(g.start == -1.0);
  CHECK(cli::parse_complex("1.5,-2") == cplx(1.5, -2.0));
  CHECK_THROWS_AS(cli::parse_grid("0:1", "grid"), Error);
  CHECK(cli::exit_code_for(Error(ErrorCode::support_truncated, "x")) == 2);
}
