#include "tcs/cli/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <functional>
#include <random>

#include "tcs/coherent.hpp"
#include "tcs/error.hpp"
#include "tcs/evolution.hpp"
#include "tcs/models.hpp"
#include "tcs/special_states.hpp"

namespace tcs::cli {

std::uint64_t default_seed() {
  if (const char* s = std::getenv("TCS_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
    throw Error(ErrorCode::config, "TCS_SEED must be a decimal integer");
  }
  return 20240917;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Positive nodes at least 0.4 apart and nonzero d of random sign: H = A^dagger A is positive definite.
ShiftCoefficients random_shift(Rng& rng, std::size_t N) {
  std::vector<double> c(N + 1), d(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    c[n] = 0.5 + static_cast<double>(n) + uniform(rng, -0.3, 0.3);
    if (n > 0) d[n] = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(rng, 0.5, 1.5);
  }
  std::shuffle(c.begin(), c.end(), rng);
  return ShiftCoefficients(std::move(c), std::move(d));
}

struct Suite {
  std::string name;
  std::vector<CheckResult>* out;

  void add(const std::string& check, bool pass, const std::string& detail) {
    out->push_back({name, check, pass, detail});
  }

  void guarded(const std::string& check, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      add(check, false, fmt::format("ERROR:{}:{}", to_string(e.code()), e.what()));
    }
  }
};

double inverse_defect(const ExtMatrix& bar, const ExtMatrix& lambda) {
  const ExtMatrix prod = bar * lambda;
  return static_cast<double>((prod - ExtMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff());
}

void core_suite(Suite& s, Rng& rng, const VerifyOptions& opts) {
  s.guarded("reconstruct(factorize) round trip", [&] {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const ShiftCoefficients sc = random_shift(rng, pick(rng, 3, 25));
      const TridiagonalEntries e = reconstruct(sc);
      const TridiagonalSpec spec = TridiagonalSpec::from_vectors(e.a, e.b, "random");
      const std::size_t N = sc.order() - 1;
      const ShiftCoefficients f = factorize(spec, N);
      for (std::size_t n = 0; n <= N; ++n) {
        const double scale = std::max(1.0, std::abs(e.a[n]));
        worst = std::max(worst, std::abs(f.c(n) * f.c(n) - sc.c(n) * sc.c(n)) / scale);
        worst = std::max(worst, std::abs(f.d(n) * f.d(n) - sc.d(n) * sc.d(n)) / scale);
        if (n < N) worst = std::max(worst, std::abs(f.c(n) * f.d(n + 1) - e.b[n]) / scale);
      }
    }
    s.add("reconstruct(factorize) round trip", worst <= 1e-12, fmt::format("max relative defect {:.3e}", worst));
  });

  s.guarded("closed-form Lambda-bar inverts Lambda", [&] {
    std::vector<SpecialStateMatrices> cases;
    cases.push_back(special_state_matrices(morse_coefficients(10.0, 1.0, 3.0, 25), 25));
    for (int k = 0; k < 50; ++k) {
      const ShiftCoefficients sc = random_shift(rng, pick(rng, 3, 20));
      cases.push_back(special_state_matrices(sc, sc.order()));
    }
    double worst = 0.0;
    std::string where;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      ExtMatrix bar = cases[k].lambda_bar;
      if (k == 0 && opts.corrupt_lambda_bar) {
        const auto [i, j] = *opts.corrupt_lambda_bar;
        if (static_cast<Eigen::Index>(std::max(i, j)) >= bar.rows()) {
          throw Error(ErrorCode::config, "corrupted entry outside the matrix");
        }
        bar(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += 1e-3;
      }
      const double defect = inverse_defect(bar, cases[k].lambda);
      if (defect > worst) {
        worst = defect;
        const Eigen::Index n = bar.rows();
        const ExtMatrix reference = cases[k].lambda.triangularView<Eigen::Upper>().solve(ExtMatrix::Identity(n, n));
        Eigen::Index r = 0, c = 0;
        const ExtMatrix scale = reference.cwiseAbs().cwiseMax(1.0L);
        (bar - reference).cwiseAbs().cwiseQuotient(scale).maxCoeff(&r, &c);
        where = fmt::format("case {} ({}), worst entry Lambda_bar({},{})", k, k == 0 ? "morse" : "random", r, c);
      }
    }
    s.add("closed-form Lambda-bar inverts Lambda", worst < 1e-10,
          fmt::format("max |Lambda_bar Lambda - I| = {:.3e}; {}", worst, where));
  });

  s.guarded("summation identity", [&] {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const std::size_t alpha = pick(rng, 0, 5), gamma = pick(rng, 1, 8);
      const ShiftCoefficients sc = random_shift(rng, alpha + gamma);
      const cplx z(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
      const SummationSides sides = summation_identity_check(sc.c(), z, alpha, gamma);
      worst = std::max(worst, std::abs(sides.lhs - sides.rhs) / std::max(1.0, std::abs(sides.rhs)));
    }
    s.add("summation identity", worst <= 1e-12, fmt::format("max relative gap {:.3e} over 100 draws", worst));
  });

  s.guarded("K_alpha(c_beta) = delta", [&] {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const ShiftCoefficients sc = random_shift(rng, pick(rng, 3, 15));
      const SpecialStateMatrices mats = special_state_matrices(sc, sc.order());
      for (std::size_t a = 0; a <= sc.order(); ++a) {
        for (std::size_t b = 0; b <= sc.order(); ++b) {
          const cplx K = kernel_K(mats, mats.nodes[b], a, static_cast<double>(mats.lambda(0, static_cast<Eigen::Index>(b))));
          worst = std::max(worst, std::abs(K - (a == b ? 1.0 : 0.0)));
        }
      }
    }
    s.add("K_alpha(c_beta) = delta", worst <= 1e-10, fmt::format("max defect {:.3e}", worst));
  });

  s.guarded("special-basis round trip", [&] {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const ShiftCoefficients sc = random_shift(rng, pick(rng, 3, 15));
      const SpecialStateMatrices mats = special_state_matrices(sc, sc.order());
      Eigen::Matrix<long double, Eigen::Dynamic, 1> v(mats.lambda.rows());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform(rng, -1.0, 1.0);
      const Eigen::Matrix<long double, Eigen::Dynamic, 1> back = mats.lambda * (mats.lambda_bar * v);
      worst = std::max(worst, static_cast<double>((back - v).cwiseAbs().maxCoeff()));
    }
    s.add("special-basis round trip", worst <= 1e-10, fmt::format("max defect {:.3e}", worst));
  });

  s.guarded("coherent states normalized and annihilated", [&] {
    double worst_norm = 0.0, worst_res = 0.0;
    const ShiftSequence morse([](std::size_t N) { return morse_coefficients(10.0, 1.0, 3.0, N); });
    for (int k = 0; k < 20; ++k) {
      const cplx z(uniform(rng, -1.0, 2.0), uniform(rng, -1.0, 1.0));
      const CoherentCoefficients coh = coherent_state(morse, z);
      const BasisVector v = coh.coefficients();
      worst_norm = std::max(worst_norm, std::abs(norm(v) - 1.0));
      worst_res = std::max(worst_res, annihilation_residual(morse.take(coh.order), v, z));
    }
    s.add("coherent states normalized and annihilated", worst_norm <= 1e-12 && worst_res <= 1e-10,
          fmt::format("norm defect {:.3e}, interior residual {:.3e}", worst_norm, worst_res));
  });

  s.guarded("Lagrange forms reproduce the truncated state", [&] {
    const ShiftCoefficients sc = morse_coefficients(10.0, 1.0, 3.0, 10);
    const CoherentCoefficients coh = coherent_state_at_order(ShiftSequence(sc), 0.83, 10);
    const BasisVector direct = coh.coefficients();
    double worst = 0.0;
    for (LagrangeForm f : {LagrangeForm::i, LagrangeForm::ii, LagrangeForm::iii}) {
      const LagrangeExpansion e = lagrange_expand(sc, 0.83, f, 10);
      for (std::size_t n = 0; n < direct.size(); ++n) worst = std::max(worst, std::abs(e.assembled[n] - direct[n]));
    }
    s.add("Lagrange forms reproduce the truncated state", worst <= 1e-10, fmt::format("max coefficient gap {:.3e}", worst));
  });
}

double gram_defect(const BasisEvaluator& basis, double lo, double hi, std::size_t points) {
  const UniformGrid grid(lo, hi, points);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(7, 7);
  for (std::size_t i = 0; i < points; ++i) {
    const double w = (i == 0 || i + 1 == points ? 0.5 : 1.0) * grid.step();
    const std::vector<double> phi = basis(6, grid.at(i));
    for (int a = 0; a < 7; ++a) {
      for (int b = 0; b < 7; ++b) gram(a, b) += w * phi[static_cast<std::size_t>(a)] * phi[static_cast<std::size_t>(b)];
    }
  }
  return (gram - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff();
}

template <class F>
double max_over(double lo, double hi, std::size_t n, F&& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, f(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  return worst;
}

void models_suite(Suite& s) {
  const ModelDescriptor morse_d{ModelKind::morse, {{"V0", 10.0}, {"alpha", 1.0}, {"gamma", 3.0}}};
  const ModelDescriptor radial_d{ModelKind::radial_ho, {{"omega", 2.0}, {"ell", 1.0}, {"lambda", 1.0}}};
  const ModelDescriptor free_d{ModelKind::free_radial, {{"ell", 1.0}, {"lambda", 1.0}}};

  s.guarded("scale selectors", [&] {
    const double g0 = scale_selector(morse_d, 0.83);
    const double l0 = scale_selector(radial_d, 3.0);
    const double f0 = scale_selector(free_d, 3.0);
    const bool ok = std::abs(g0 - 4.646) <= 5e-4 && std::abs(l0 - 3.291) <= 5e-4 && std::abs(f0 - 2.683) <= 5e-4;
    s.add("scale selectors", ok,
          fmt::format("gamma0={:.6f} lambda0={:.6f} free lambda0={:.6f} (figure caption prints 2.863)", g0, l0, f0));
  });

  s.guarded("Morse gamma0 and gamma1 ground states", [&] {
    const double V0 = 10.0, alpha = 1.0, D = morse_D(V0, alpha);
    const auto ground = morse_ground_state(V0, alpha);
    const BasisEvaluator b0 = morse_basis(V0, alpha, D - 0.5);
    const ShiftCoefficients sc1 = morse_coefficients(V0, alpha, D - 1.5, 1);
    const SpecialStateMatrices mats = special_state_matrices(sc1, 1);
    const BasisEvaluator b1 = morse_basis(V0, alpha, D - 1.5);
    const double worst = max_over(-2.0, 6.0, 801, [&](double x) {
      const double one = b0(0, x)[0];
      const std::vector<double> p = b1(1, x);
      const double two = static_cast<double>(mats.lambda(0, 1)) * p[0] + static_cast<double>(mats.lambda(1, 1)) * p[1];
      return std::max(std::abs(one - ground(x)), std::abs(std::abs(two) - ground(x)));
    });
    s.add("Morse gamma0 and gamma1 ground states", worst < 1e-9, fmt::format("max pointwise gap {:.3e}", worst));
  });

  s.guarded("radial ground state at lambda = sqrt(omega)", [&] {
    const double omega = 2.0;
    const auto ground = radial_ho_ground_state(omega, 1);
    const BasisEvaluator b = radial_basis(1, std::sqrt(omega));
    const double worst = max_over(0.0, 6.0, 601, [&](double r) { return std::abs(b(0, r)[0] - ground(r)); });
    s.add("radial ground state at lambda = sqrt(omega)", worst < 1e-10, fmt::format("max pointwise gap {:.3e}", worst));
  });

  s.guarded("ground coefficients are annihilated", [&] {
    const double D = morse_D(10.0, 1.0);
    const BasisVector e0 = {1.0, 0.0, 0.0, 0.0};
    double worst = norm(apply_A(morse_coefficients(10.0, 1.0, D - 0.5, 3), e0));
    worst = std::max(worst, norm(apply_A(radial_ho_coefficients(2.0, 1, std::sqrt(2.0), 3), e0)));
    const Model ho = make_model({ModelKind::ho1d, {{"omega", 1.0}}});
    worst = std::max(worst, norm(apply_A(ho.shift.take(3), e0)));
    const ShiftCoefficients sc1 = morse_coefficients(10.0, 1.0, D - 1.5, 3);
    const SpecialStateMatrices mats = special_state_matrices(sc1, 1);
    const BasisVector two = {static_cast<double>(mats.lambda(0, 1)), static_cast<double>(mats.lambda(1, 1)), 0.0, 0.0};
    worst = std::max(worst, norm(apply_A(sc1, two)));
    s.add("ground coefficients are annihilated", worst < 1e-10, fmt::format("max |A v| {:.3e}", worst));
  });

  s.guarded("measure gates", [&] {
    const ModelDescriptor r = with_selected_scale(radial_d, 3.0);
    const Model rm = make_model(r);
    double total = 0.0;
    for (const DiscreteLevel& l : rm.measure->discrete) total += l.weight;
    const double radial = orthonormality_defect(*rm.measure, rm.spec, 6);
    const Model fm = make_model(with_selected_scale(free_d, 3.0));
    const double free = orthonormality_defect(*fm.measure, fm.spec, 6);
    const bool ok = std::abs(total - 1.0) <= 1e-10 && radial < 1e-8 && free < 1e-8;
    s.add("measure gates", ok,
          fmt::format("radial sum-1 {:.3e}, radial defect {:.3e}, free defect {:.3e}", total - 1.0, radial, free));
  });

  s.guarded("basis orthonormality", [&] {
    const double m = gram_defect(morse_basis(10.0, 1.0, 3.0), -4.0, 16.0, 8001);
    const double r = gram_defect(radial_basis(1, 1.3), 0.0, 12.0, 8001);
    const double h = gram_defect(ho1d_basis(1.0), -12.0, 12.0, 8001);
    s.add("basis orthonormality", std::max({m, r, h}) <= 1e-7,
          fmt::format("Gram defects morse {:.2e} radial {:.2e} ho1d {:.2e}", m, r, h));
  });

  s.guarded("factorize matches model coefficients", [&] {
    const Model rm = make_model(with_selected_scale(radial_d, 3.0));
    const ShiftCoefficients model = rm.shift.take(20);
    const ShiftCoefficients f = factorize(rm.spec, 20);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 20; ++n) {
      const double scale = std::max(1.0, std::abs(rm.spec.a(n)));
      worst = std::max(worst, std::abs(f.c(n) * f.c(n) - model.c(n) * model.c(n)) / scale);
      worst = std::max(worst, std::abs(f.d(n) * f.d(n) - model.d(n) * model.d(n)) / scale);
    }
    s.add("factorize matches model coefficients", worst <= 1e-12, fmt::format("max relative defect {:.3e}", worst));
  });

  s.guarded("1D oscillator evolution", [&] {
    const Model m = make_model({ModelKind::ho1d, {{"omega", 1.0}}});
    const CoherentCoefficients coh = coherent_state(m.shift, 1.0);
    const ClosedFormOracle o = m.oracle(1.0);
    const EvolvedState st = evolve(*m.measure, coh, m.shift.take(coh.order), 0.7);
    const double worst = max_over(-5.0, 5.0, 201, [&](double x) { return std::abs(st(x) - o.psi(x, 0.7)); });
    s.add("1D oscillator evolution", worst < 1e-8, fmt::format("max gap to closed form {:.3e}", worst));
  });

  s.guarded("radial oscillator evolution", [&] {
    const ModelDescriptor r = with_selected_scale(radial_d, 3.0);
    const Model m = make_model(r);
    const CoherentCoefficients coh = coherent_state(m.shift, 3.0);
    const ClosedFormOracle o = m.oracle(3.0);
    double worst = 0.0;
    for (double t : {0.3, 1.1}) {
      const EvolvedState st = evolve(*m.measure, coh, m.shift.take(coh.order), t);
      worst = std::max(worst, max_over(0.0, 6.0, 201, [&](double x) { return std::abs(st(x) - o.psi(x, t)); }));
    }
    s.add("radial oscillator evolution", worst < 1e-8, fmt::format("max gap to closed form {:.3e}", worst));
  });

  s.guarded("free particle evolution", [&] {
    const Model m = make_model(with_selected_scale(free_d, 3.0));
    const CoherentCoefficients coh = coherent_state(m.shift, 3.0);
    const ClosedFormOracle o = m.oracle(3.0);
    double worst = 0.0;
    for (double t : {0.0, 0.5, 1.0}) {
      const EvolvedState st = evolve(*m.measure, coh, m.shift.take(coh.order), t);
      worst = std::max(worst, max_over(0.0, 10.0, 201, [&](double x) { return std::abs(st(x) - o.psi(x, t)); }));
    }
    s.add("free particle evolution", worst < 1e-6, fmt::format("max gap to closed form {:.3e}", worst));
  });

  s.guarded("Morse densities agree across forms", [&] {
    const Model m = make_model(morse_d);
    const ShiftCoefficients sc = m.shift.take(10);
    const CoherentCoefficients coh = coherent_state_at_order(m.shift, 0.83, 10);
    std::vector<PositionFunction> psis = {basis_expansion(m.basis, coh.coefficients())};
    for (LagrangeForm f : {LagrangeForm::i, LagrangeForm::ii, LagrangeForm::iii}) {
      psis.push_back(basis_expansion(m.basis, lagrange_expand(sc, 0.83, f, 10).assembled));
    }
    const double worst = max_over(-2.0, 6.0, 1024, [&](double x) {
      double lo = 1e300, hi = -1e300;
      for (const auto& p : psis) {
        lo = std::min(lo, std::norm(p(x)));
        hi = std::max(hi, std::norm(p(x)));
      }
      return hi - lo;
    });
    s.add("Morse densities agree across forms", worst < 1e-6, fmt::format("max pairwise gap {:.3e}", worst));
  });
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  Rng rng(options.seed);
  if (options.suite == "all" || options.suite == "core") {
    Suite s{"core", &out};
    core_suite(s, rng, options);
  }
  if (options.suite == "all" || options.suite == "models") {
    Suite s{"models", &out};
    models_suite(s);
  }
  return out;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  out << "seed " << options.seed << '\n';
  const std::vector<CheckResult> results = run_verify(options);
  std::size_t failed = 0;
  for (const CheckResult& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.suite << ": " << r.name << ": " << r.detail << '\n';
    if (!r.pass) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace tcs::cli
