#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pincherle/errors.hpp"
#include "pincherle/fde_solutions.hpp"

using namespace pincherle;

namespace {

// x f(x) - (x + 2) f(x + 1) = 0, columns in the (x + k) basis
FirstOrderFDE beta_fde() {
  const std::vector<Complex> a0 = {0.0, 1.0};
  const std::vector<Complex> a1 = {-1.0, -1.0};
  return FirstOrderFDE::from_columns(a0, a1);
}

Complex eval_kernel(const MellinKernel& k, Complex x) { return std::exp(kernel_log_eval(k, x)); }

bool has_root(const std::vector<Complex>& roots, Complex r) {
  return std::any_of(roots.begin(), roots.end(), [&](Complex x) { return std::abs(x - r) < 1e-12; });
}

}  // namespace

TEST_CASE("Beta instance roots and constant") {
  const FirstOrderFDE fde = beta_fde();
  CHECK(fde.p_poly() == Polynomial{0.0, 1.0});
  CHECK(fde.q_poly() == Polynomial{-2.0, -1.0});
  const RootData r = coefficient_roots(fde);
  REQUIRE(r.rho.size() == 1);
  REQUIRE(r.sigma.size() == 1);
  CHECK(std::abs(r.rho[0]) < 1e-15);
  CHECK(std::abs(r.sigma[0] + 2.0) < 1e-15);
  CHECK(r.c == Complex(1.0));

  const MellinKernel k = gamma_quotient(r, 0, 1);
  CHECK(kernel_formula(k) == "Γ(x)/Γ(x+2)");
  // Gamma(x) / Gamma(x + 2) = 1 / (x (x + 1))
  for (double x : {0.5, 2.5, 7.25}) CHECK(std::abs(eval_kernel(k, x) - 1.0 / (x * (x + 1.0))) < 1e-14 / (x * x));
  CHECK(fde_ratio_residual(k, r, 2.5) < 1e-13);
}

TEST_CASE("roots of expanded products") {
  const std::vector<Complex> q = {1.0};
  const RootData a = coefficient_roots(FirstOrderFDE::from_polynomials(Polynomial{2.0, -3.0, 1.0}, q));
  CHECK(has_root(a.rho, 1.0));
  CHECK(has_root(a.rho, 2.0));
  const RootData b = coefficient_roots(FirstOrderFDE::from_polynomials(Polynomial{1.0, 0.0, 1.0}, q));
  CHECK(has_root(b.rho, Complex(0.0, 1.0)));
  CHECK(has_root(b.rho, Complex(0.0, -1.0)));
}

TEST_CASE("solution constants of the three forms") {
  const Polynomial p = from_roots(std::vector<Complex>{0.5, -1.0, 2.0}, 3.0);
  const Polynomial q = from_roots(std::vector<Complex>{1.5, -0.25}, -2.0);
  const FirstOrderFDE fde = FirstOrderFDE::from_polynomials(p, q);
  CHECK(coefficient_roots(fde, SolutionForm::Direct).c == Complex(1.5));  // -lead_p / lead_q
  // (-1)^{p - q + 1} lead_p / lead_q with p = 3, q = 2
  CHECK(coefficient_roots(fde, SolutionForm::Reflected).c == Complex(3.0 / -2.0));
  CHECK(coefficient_roots(fde, SolutionForm::Mixed, 1, 2).c == solution_constant(3.0, -2.0, 1, 2, 3));
  CHECK_THROWS_AS(coefficient_roots(fde, SolutionForm::Mixed, 3, 0), OrderError);
  CHECK_THROWS_AS(gamma_quotient(coefficient_roots(fde), 0, 4), OrderError);
}

TEST_CASE("mixed form with n = p, m = 0 is the direct form") {
  const Polynomial p = from_roots(std::vector<Complex>{{0.3, 0.1}, -1.2}, 1.5);
  const Polynomial q = from_roots(std::vector<Complex>{{2.0, -0.4}, 0.7}, 0.5);
  const FirstOrderFDE fde = FirstOrderFDE::from_polynomials(p, q);
  const RootData direct = coefficient_roots(fde, SolutionForm::Direct);
  const RootData mixed = coefficient_roots(fde, SolutionForm::Mixed, 0, 2);
  CHECK(mixed.c == direct.c);
  CHECK(gamma_quotient(mixed, 0, 2) == gamma_quotient(direct, 0, 2));
  // p = q with m = 0, n = p: c = -lead_p / lead_q
  CHECK(direct.c == -p.back() / q.back());
}

TEST_CASE("ratio identity on random instances") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<Complex> rho(i % 5), sigma((i / 5) % 5);
    for (auto& r : rho) r = Complex(u(rng), u(rng));
    for (auto& s : sigma) s = Complex(u(rng), u(rng));
    const FirstOrderFDE fde =
        FirstOrderFDE::from_polynomials(from_roots(rho, Complex(1.0 + std::abs(u(rng)), 0.0)), from_roots(sigma, -1.0));
    const RootData roots = coefficient_roots(fde);
    const std::size_t m = i % (sigma.size() + 1), n = (i / 3) % (rho.size() + 1);
    const MellinKernel k = gamma_quotient(roots, m, n);
    CHECK(fde_ratio_residual(k, roots, Complex(10.0, 3.0)) < 1e-12);
  }
}

TEST_CASE("forms differ by a 1-periodic factor") {
  const Polynomial p = from_roots(std::vector<Complex>{0.4, {-1.1, 0.6}}, 2.0);
  const Polynomial q = from_roots(std::vector<Complex>{{0.9, -0.3}}, -1.0);
  const FirstOrderFDE fde = FirstOrderFDE::from_polynomials(p, q);
  const MellinKernel direct = gamma_quotient(coefficient_roots(fde, SolutionForm::Direct), 0, 2);
  const MellinKernel reflected = gamma_quotient(coefficient_roots(fde, SolutionForm::Reflected), 1, 0);
  const Complex x(0.37, 0.21);
  const Complex r0 = eval_kernel(direct, x) / eval_kernel(reflected, x);
  for (int k = 1; k <= 3; ++k) {
    const Complex xk = x + static_cast<double>(k);
    CHECK(std::abs(eval_kernel(direct, xk) / eval_kernel(reflected, xk) - r0) < 1e-11 * std::abs(r0));
  }
}

TEST_CASE("empty products give a pure exponential") {
  const FirstOrderFDE fde = FirstOrderFDE::from_polynomials(Polynomial{-2.0}, Polynomial{1.0});
  const RootData r = coefficient_roots(fde);
  CHECK(r.ratio_constant() == Complex(2.0));
  const MellinKernel k = gamma_quotient(r, 0, 0);
  for (Complex x : {Complex(0.3), Complex(-4.0, 2.0)}) {
    CHECK(std::abs(kernel_log_eval(k, x + 1.0) - kernel_log_eval(k, x) - std::log(2.0)) < 1e-15);
    CHECK(fde_ratio_residual(k, r, x) == 0.0);
  }
}

TEST_CASE("coincident roots cancel") {
  // P = x - 1, Q = x - 1: rho and sigma coincide, f is c^x
  const FirstOrderFDE fde = FirstOrderFDE::from_polynomials(Polynomial{-1.0, 1.0}, Polynomial{-1.0, 1.0});
  const MellinKernel k = gamma_quotient(coefficient_roots(fde), 0, 1);
  CHECK(k.cancelled_pairs == 1);
  CHECK(k.numerators().empty());
  CHECK(k.denominators().empty());
}

TEST_CASE("matrix input and validation") {
  const CoefficientMatrix a = CoefficientMatrix::from_rows({{0.0, -1.0}, {1.0, -1.0}});
  CHECK(FirstOrderFDE::from_matrix(a).q_poly() == beta_fde().q_poly());
  CHECK_THROWS_AS(FirstOrderFDE::from_matrix(CoefficientMatrix::from_rows({{1.0, 1.0, 1.0}})), OrderError);
  CHECK_THROWS_AS(FirstOrderFDE::from_polynomials(Polynomial{0.0}, Polynomial{1.0}), ParameterError);
}

TEST_CASE("ratio residual at a pole") {
  const RootData r = coefficient_roots(beta_fde());
  CHECK_THROWS_AS(fde_ratio_residual(gamma_quotient(r, 0, 1), r, -3.0), PoleError);
}

TEST_CASE("special solution by the vertical-line integral") {
  const std::vector<Complex> rho = {0.0};
  const SpecialSolution s = pincherle_special_solution(rho, {}, 0.5);
  CHECK(s.contour.anchor == 0.5);
  // closing left over the poles of Gamma(x) at x = -l: sum (-1)^l e^{-lt} / l! = exp(-e^{-t})
  for (double t : {-0.5, 0.0, 1.0}) {
    const EvalResult r = integrate(s.kernel, std::exp(t), s.contour, 1e-12);
    CHECK(std::abs(r.value - std::exp(-std::exp(-t))) < 1e-10);
  }
  CHECK_THROWS_AS(pincherle_special_solution(rho, {}, 0.0), ContourError);

  const std::vector<Complex> rho2 = {0.0, 0.5};
  const std::vector<Complex> sigma2 = {1.0};
  const SpecialSolution two = pincherle_special_solution(rho2, sigma2, 1.0);
  CHECK(two.kernel.numerators().size() == 2);
  CHECK(two.kernel.denominators().size() == 1);
  CHECK_THROWS_AS(pincherle_special_solution(rho2, {}, 1.0), ParameterError);
}

TEST_CASE("formula text") {
  const std::vector<Complex> a0 = {0.0, 1.0};
  const std::vector<Complex> a1 = {-1.0, -1.0};
  const FirstOrderFDE fde = FirstOrderFDE::from_columns(a0, a1);
  CHECK(kernel_formula(gamma_quotient(coefficient_roots(fde, SolutionForm::Reflected), 1, 0)) == "Γ(−1−x)/Γ(1−x)");
  CHECK(solution_form_name(SolutionForm::Mixed) == "mixed");
}
