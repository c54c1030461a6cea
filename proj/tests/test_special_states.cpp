#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tcs/error.hpp"
#include "tcs/models.hpp"
#include "tcs/special_states.hpp"

using namespace tcs;

namespace {

ShiftCoefficients random_shift(std::mt19937_64& rng, std::size_t N) {
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ud(0.3, 2.0);
  std::vector<double> c(N + 1), d(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    c[n] = uc(rng);
    if (n > 0) d[n] = (n % 2 ? 1.0 : -1.0) * ud(rng);
  }
  return ShiftCoefficients(c, d);
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

// Normalized truncated |z) from the bidiagonal solve.
std::vector<cplx> direct_state(const ShiftCoefficients& sc, cplx z, int N) {
  auto q = oracle::q_brute(to_vec(sc.c()), to_vec(sc.d()), z, N);
  double s = 0.0;
  for (const cplx& v : q) s += std::norm(v);
  for (cplx& v : q) v /= std::sqrt(s);
  return q;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::domain;
}

}  // namespace

TEST_CASE("columns of Lambda are normalized eigenvectors of the truncated A") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ShiftCoefficients sc = random_shift(rng, 4 + trial);
    const int N = static_cast<int>(sc.order());
    const SpecialStateMatrices m = special_state_matrices(sc, N);
    const Eigen::MatrixXd A = oracle::dense_a(to_vec(sc.c()), to_vec(sc.d()), N + 1);
    const Eigen::MatrixXd L = m.lambda.cast<double>();
    for (int a = 0; a <= N; ++a) {
      const Eigen::VectorXd col = L.col(a);
      CHECK((A * col - sc.c(a) * col).norm() <= 1e-10 * std::max(1.0, A.norm()));
      CHECK(col.norm() == doctest::Approx(1.0).epsilon(1e-13));
      for (int n = a + 1; n <= N; ++n) CHECK(L(n, a) == 0.0);
    }
  }
}

TEST_CASE("closed-form Lambda-bar equals the back-substitution inverse") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const ShiftCoefficients sc = random_shift(rng, 3 + 2 * trial);
    const SpecialStateMatrices m = special_state_matrices(sc, sc.order());
    const ExtMatrix inv = oracle::upper_inverse<long double>(m.lambda);
    for (Eigen::Index i = 0; i < inv.rows(); ++i) {
      for (Eigen::Index j = 0; j < inv.cols(); ++j) {
        CHECK(std::abs(static_cast<double>(m.lambda_bar(i, j) - inv(i, j))) <=
              1e-10 * std::max(1.0, std::abs(static_cast<double>(inv(i, j)))));
      }
    }
  }
}

TEST_CASE("Morse Lambda-bar Lambda at order 25") {
  const SpecialStateMatrices m = special_state_matrices(morse_coefficients(10.0, 1.0, 3.0, 25), 25);
  const ExtMatrix defect = m.lambda_bar * m.lambda - ExtMatrix::Identity(26, 26);
  CHECK(static_cast<double>(defect.cwiseAbs().maxCoeff()) < 1e-10);
}

TEST_CASE("node and diagonal guards") {
  CHECK(code_of([] { require_distinct_nodes(std::vector<double>{0.1, 0.5, 0.1 + 1e-10}); }) ==
        ErrorCode::duplicate_nodes);
  CHECK_NOTHROW(require_distinct_nodes(std::vector<double>{0.1, 0.5, 0.2}));
  CHECK(code_of([] { special_state_matrices(radial_ho_coefficients(2.0, 1, std::sqrt(2.0), 8), 8); }) ==
        ErrorCode::duplicate_nodes);
  const ShiftCoefficients broken({0.1, 0.9, 1.7}, {0.0, 1.0, 0.0});
  CHECK(code_of([&] { build_lambda(broken, 2); }) == ErrorCode::singular_diagonal);
}

TEST_CASE("summation identity against direct products") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t alpha = static_cast<std::size_t>(trial % 5), gamma = 1 + static_cast<std::size_t>(trial % 7);
    std::vector<double> nodes(alpha + gamma + 1);
    for (double& c : nodes) c = u(rng);
    const cplx z(u(rng), u(rng));
    cplx lhs = 1.0;
    for (std::size_t n = 1; n <= gamma; ++n) {
      cplx p = 1.0;
      for (std::size_t j = alpha; j <= n + alpha - 1; ++j) p *= (z - nodes[j]) / (nodes[alpha] - nodes[j + 1]);
      lhs += p;
    }
    cplx rhs = 1.0;
    for (std::size_t k = alpha + 1; k <= gamma + alpha; ++k) rhs *= (z - nodes[k]) / (nodes[alpha] - nodes[k]);
    const SummationSides s = summation_identity_check(nodes, z, alpha, gamma);
    const double scale = std::max(1.0, std::abs(rhs));
    CHECK(std::abs(s.lhs - lhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    CHECK(std::abs(s.rhs - rhs) <= 1e-12 * scale);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * scale);
  }
}

TEST_CASE("kernel K is a Kronecker delta on the nodes") {
  const ShiftCoefficients sc = morse_coefficients(10.0, 1.0, 3.0, 12);
  const SpecialStateMatrices m = special_state_matrices(sc, 12);
  for (std::size_t b = 0; b <= 12; ++b) {
    const double l0 = static_cast<double>(m.lambda(0, static_cast<Eigen::Index>(b)));
    for (std::size_t a = 0; a <= 12; ++a) {
      const cplx K = kernel_K(m, sc.c(b), a, l0);
      CHECK(std::abs(K - (a == b ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("all three Lagrange forms reproduce the truncated coherent state") {
  const ShiftCoefficients sc = morse_coefficients(10.0, 1.0, 3.0, 16);
  for (cplx z : {cplx(0.83, 0.0), cplx(0.4, 0.3), cplx(-1.2, -0.5)}) {
    for (int N : {6, 10, 16}) {
      const auto want = direct_state(sc, z, N);
      for (LagrangeForm f : {LagrangeForm::i, LagrangeForm::ii, LagrangeForm::iii}) {
        const LagrangeExpansion e = lagrange_expand(sc, z, f, static_cast<std::size_t>(N));
        REQUIRE(e.assembled.size() == want.size());
        // Rounding grows with the weight magnitudes when z lies far from the nodes.
        double cond = 0.0;
        for (const cplx& w : e.weights) cond += std::abs(w);
        const double tol = 1e-14 * std::max(1e4, cond);
        // common phase is fixed by Q_0 = 1 > 0
        for (std::size_t n = 0; n < want.size(); ++n) CHECK(std::abs(e.assembled[n] - want[n]) <= tol);
        CHECK_FALSE(e.at_node);
      }
    }
  }
}

TEST_CASE("Lagrange forms at a node return the special state") {
  const ShiftCoefficients sc = morse_coefficients(10.0, 1.0, 3.0, 10);
  const SpecialStateMatrices m = special_state_matrices(sc, 10);
  for (LagrangeForm f : {LagrangeForm::ii, LagrangeForm::iii}) {
    const LagrangeExpansion e = lagrange_expand(m, sc.c(4) + 1e-12, f);
    CHECK(e.at_node);
    CHECK(e.weights[4] == 1.0);
    for (Eigen::Index n = 0; n <= 10; ++n) {
      CHECK(std::abs(e.assembled[static_cast<std::size_t>(n)] - static_cast<double>(m.lambda(n, 4))) <= 1e-15);
    }
  }
  const LagrangeExpansion exact = lagrange_expand(m, sc.c(4), LagrangeForm::i);
  for (Eigen::Index n = 0; n <= 10; ++n) {
    CHECK(std::abs(exact.assembled[static_cast<std::size_t>(n)] - static_cast<double>(m.lambda(n, 4))) <= 1e-12);
  }
  CHECK(to_string(LagrangeForm::iii) == "iii");
}
