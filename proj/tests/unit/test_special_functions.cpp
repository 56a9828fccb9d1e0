#include <cmath>
#include <random>

#include "doctest.h"
#include "pincherle/errors.hpp"
#include "pincherle/special_functions.hpp"

using namespace pincherle;

namespace {
using CV = std::vector<Complex>;

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

// Gauss 2F1 by direct summation in long double, far from |z| = 1
Complex gauss_sum(double a, double b, double c, double z) {
  long double term = 1.0L, sum = 1.0L;
  for (int n = 0; n < 400; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0L)) * z;
    sum += term;
  }
  return static_cast<double>(sum);
}
}  // namespace

TEST_CASE("pFq series closed forms") {
  CHECK(rel(pfq(CV{}, CV{}, 1.0), std::exp(1.0)) < 1e-15);
  CHECK(rel(pfq(CV{2.0}, CV{}, 0.5), 4.0) < 1e-14);
  CHECK(rel(pfq(CV{1.0, 1.0}, CV{2.0}, 0.5), 2.0 * std::log(2.0)) < 1e-14);
  CHECK(rel(pfq(CV{1.0, 1.0}, CV{2.0}, -0.5), -std::log(1.5) / -0.5) < 1e-15);
  CHECK(rel(pfq(CV{1.0}, CV{2.0}, -1.0), 1.0 - std::exp(-1.0)) < 1e-15);
  // 0F1(; 1; -z^2/4) = J0(z)
  CHECK(rel(pfq(CV{}, CV{1.0}, -1.0), std::cyl_bessel_j(0.0, 2.0)) < 1e-14);
  CHECK(rel(pfq(CV{0.3, 1.7}, CV{2.2}, -0.4), gauss_sum(0.3, 1.7, 2.2, -0.4)) < 1e-14);
}

TEST_CASE("pFq termination and invalid parameters") {
  // 2F1(-2, b; c; z) is a polynomial
  const double b = 1.5, c = 0.5, z = 3.0;
  const double want = 1.0 - 2.0 * b / c * z + b * (b + 1.0) / (c * (c + 1.0)) * z * z;
  CHECK(rel(pfq(CV{-2.0, b}, CV{c}, z), want) < 1e-15);
  // terminates before the bad denominator is reached
  CHECK(std::abs(pfq(CV{-1.0}, CV{-3.0}, 2.0) - (1.0 + 2.0 / 3.0)) < 1e-15);
  CHECK_THROWS_AS(pfq(CV{1.0}, CV{-1.0}, 0.5), InvalidDenominatorError);
  CHECK_THROWS_AS(pfq(CV{1.0, 1.0, 1.0}, CV{1.0}, 0.1), DivergentSeriesError);
  CHECK_THROWS_AS(pfq(CV{1.0, 1.0}, CV{2.0}, 1.5), DivergentSeriesError);
}

TEST_CASE("series classification") {
  CHECK(classify_pfq(1, 2) == PfqClass::ConvergesEverywhere);
  CHECK(classify_pfq(2, 1, 0.5) == PfqClass::ConvergesUnitDisk);
  CHECK(classify_pfq(3, 1, 0.1) == PfqClass::DivergesNonzero);
  CHECK(series_converges(2, 1, 0.5));
  CHECK_FALSE(series_converges(2, 1, 2.0));
  CHECK(series_converges(3, 1, 0.0));
}

TEST_CASE("series recurrence") {
  CHECK(series_recurrence_residual(CV{1.0, 1.0}, CV{2.0}, 3) < 1e-15);
  CHECK(series_recurrence_residual(CV{0.4, {1.0, 2.0}}, CV{{0.3, -0.5}}, 0) == 0.0);
  CHECK(series_recurrence_residual(CV{-2.0, 1.5}, CV{0.5}, 2) == 0.0);
  // the coefficients themselves leave double range here
  CHECK(series_recurrence_residual(CV{}, CV{3.9, 3.8, {3.7, 1.0}, 3.95}, 50) < 1e-14);
  CHECK(series_recurrence_residual(CV{-3.9, 3.8, {3.7, 1.0}, 3.95}, CV{}, 50) < 1e-14);
}

TEST_CASE("Meijer G closed forms") {
  for (double b : {0.0, 0.5, 2.0})
    for (double z : {0.1, 1.0, 2.0, 10.0}) {
      const GParams p{1, 0, 0, 1, {}, {b}};
      const double want = std::pow(z, b) * std::exp(-z);
      MeijerOptions quad;
      quad.method = EvalMethod::Quadrature;
      MeijerOptions res;
      res.method = EvalMethod::ResiduesRight;
      CHECK(rel(meijer_g(p, z, 1e-12, quad).value, want) < 1e-10);
      CHECK(rel(meijer_g(p, z, 1e-14, res).value, want) < 1e-13);
    }
  // G^{2,0}_{0,2}[z | 0, 1/2] = sqrt(pi) e^{-2 sqrt z}
  const GParams k{2, 0, 0, 2, {}, {0.0, 0.5}};
  CHECK(rel(meijer_g(k, 1.7, 1e-12).value, std::sqrt(kPi) * std::exp(-2.0 * std::sqrt(1.7))) < 1e-10);
  // G^{1,2}_{2,2}[z | 1, 1; 1, 0] = log(1 + z)
  const GParams l{1, 2, 2, 2, {1.0, 1.0}, {1.0, 0.0}};
  CHECK(rel(meijer_g(l, 0.6, 1e-12).value, std::log(1.6)) < 1e-10);
}

TEST_CASE("Meijer G embedding of 1F1") {
  // G^{1,1}_{1,2}[-z | 1 - a; 0, 1 - b] = Gamma(a) / Gamma(b) 1F1(a; b; z)
  const double a = 1.0, b = 2.0, z = -1.0;
  const GParams p{1, 1, 1, 2, {1.0 - a}, {0.0, 1.0 - b}};
  const Complex want = std::tgamma(a) / std::tgamma(b) * pfq(CV{a}, CV{b}, z);
  CHECK(rel(meijer_g(p, -z, 1e-12).value, want) < 1e-10);
}

TEST_CASE("Meijer G rejections") {
  CHECK_THROWS_AS(meijer_g(GParams{0, 0, 0, 1, {}, {0.0}}, 1.0, 1e-10), ConvergenceError);
  CHECK_THROWS_AS(meijer_g(GParams{1, 0, 0, 1, {}, {0.0}}, 0.0, 1e-10), ParameterError);
  CHECK_THROWS_AS(meijer_g(GParams{2, 0, 0, 1, {}, {0.0}}, 1.0, 1e-10), ParameterError);
  CHECK_THROWS_AS(meijer_g(GParams{1, 0, 1, 1, {}, {0.0}}, 1.0, 1e-10), ParameterError);
  CHECK_THROWS_AS(meijer_g(GParams{1, 1, 1, 1, {1.0}, {0.0}}, 1.0, 1e-10), ParameterError);
}

TEST_CASE("automatic method uses residues for conditionally convergent integrals") {
  // G^{1,0}_{0,2}[z | 1/2, 0] = z^{1/4} J_{1/2}(2 sqrt z): balanced kernel at arg z = 0
  const GParams p{1, 0, 0, 2, {}, {0.5, 0.0}};
  const MellinKernel k = kernel_of(p);
  CHECK(convergence_class(k, 0.8) == ConvergenceClass::Conditional);
  const EvalResult r = meijer_g(p, 0.8, 1e-13);
  CHECK(r.method == Method::ResiduesRight);
  const double want = std::pow(0.8, 0.25) * std::cyl_bessel_j(0.5, 2.0 * std::sqrt(0.8));
  CHECK(rel(r.value, want) < 1e-12);
  CHECK(preferred_residue_side(k, 0.8) == Side::Right);

  // J0: the algebraic decay vanishes on the default line, so only residues apply
  const GParams j0{1, 0, 0, 2, {}, {0.0, 0.0}};
  CHECK_THROWS_AS(meijer_g(j0, 0.8, 1e-13), ConvergenceError);
  MeijerOptions res;
  res.method = EvalMethod::Residues;
  CHECK(rel(meijer_g(j0, 0.8, 1e-13, res).value, std::cyl_bessel_j(0.0, 2.0 * std::sqrt(0.8))) < 1e-12);
}

TEST_CASE("pFq through the Mellin-Barnes integral") {
  CHECK(rel(pfq_via_g(CV{1.0, 1.0}, CV{2.0}, -0.5, 1e-12).value, std::log(1.5) / 0.5) < 1e-8);
  CHECK(rel(pfq_via_g(CV{1.0}, CV{2.0}, -1.0, 1e-12).value, 1.0 - std::exp(-1.0)) < 1e-8);
  // beyond the unit disk the integral continues -log(1 - z) / z analytically
  CHECK(rel(pfq_via_g(CV{1.0, 1.0}, CV{2.0}, -3.0, 1e-12).value, std::log(4.0) / 3.0) < 1e-8);
  // off the real axis
  const Complex z(0.2, 0.5);
  CHECK(rel(pfq_via_g(CV{0.5, 1.5}, CV{2.5}, z, 1e-12).value, pfq(CV{0.5, 1.5}, CV{2.5}, z)) < 1e-8);
  CHECK_THROWS_AS(pfq_via_g(CV{-1.0}, CV{2.0}, -0.5, 1e-10), ParameterError);
  CHECK_THROWS_AS(pfq_via_g(CV{1.0}, CV{0.0}, -0.5, 1e-10), ParameterError);
  CHECK_THROWS_AS(pfq_via_g(CV{1.0}, CV{2.0}, 0.5, 1e-10), ParameterError);
}

TEST_CASE("Fox H") {
  // H^{1,0}_{0,1}[z | (0, 2)] = e^{-sqrt z} / 2
  const HParams p{GParams{1, 0, 0, 1, {}, {0.0}}, {}, {2.0}};
  for (double z : {1.0, 4.0, 0.3}) {
    const double want = 0.5 * std::exp(-std::sqrt(z));
    CHECK(rel(fox_h(p, z, 1e-12).value, want) < 1e-9);
    MeijerOptions res;
    res.method = EvalMethod::Residues;
    CHECK(rel(fox_h(p, z, 1e-14, res).value, want) < 1e-12);
  }
  // unit multipliers reproduce G
  const GParams g{1, 1, 1, 2, {0.3}, {0.0, -0.4}};
  const HParams unit{g, {1.0}, {1.0, 1.0}};
  CHECK(kernel_of(unit) == kernel_of(g));
  CHECK(rel(fox_h(unit, 1.5, 1e-12).value, meijer_g(g, 1.5, 1e-12).value) < 1e-12);
  CHECK_THROWS_AS(fox_h(p, 0.0, 1e-10), ParameterError);
  CHECK_THROWS_AS(fox_h(HParams{g, {-1.0}, {1.0, 1.0}}, 1.0, 1e-10), ParameterError);
  CHECK_THROWS_AS(fox_h(HParams{g, {}, {1.0, 1.0}}, 1.0, 1e-10), ParameterError);
}

TEST_CASE("theta operators") {
  // Beta difference equation: rho = 0, sigma = -2; m = 1, n = 0 gives a = 1, b = -1
  const std::vector<Complex> a0 = {0.0, 1.0};
  const std::vector<Complex> a1 = {-1.0, -1.0};
  const FirstOrderFDE fde = FirstOrderFDE::from_columns(a0, a1);
  const ThetaOperatorForm op = derive_g_ode(fde, 1, 0);
  CHECK(op.sign == 1);
  REQUIRE(op.left_factors.size() == 1);
  CHECK(std::abs(op.left_factors[0]) < 1e-15);
  REQUIRE(op.right_factors.size() == 1);
  CHECK(std::abs(op.right_factors[0] + 1.0) < 1e-15);
  CHECK(op == theta_operator(GParams{1, 0, 1, 1, {1.0}, {-1.0}}));
  CHECK(derive_g_ode(fde, 0, 1).sign == 1);
  CHECK(derive_g_ode(fde, 0, 0).sign == -1);
  CHECK_THROWS_AS(derive_g_ode(fde, 2, 0), OrderError);
}

TEST_CASE("G differential-equation residuals") {
  CHECK(g_ode_residual(GParams{1, 0, 0, 1, {}, {0.0}}, 1.0, 1e-2) < 1e-4);
  CHECK(g_ode_residual(GParams{1, 2, 2, 2, {0.0, 0.0}, {0.0, -1.0}}, 0.25, 1e-2) < 1e-4);
  const ThetaOperatorForm op = theta_operator(GParams{1, 0, 0, 1, {}, {0.0}});
  CHECK(g_ode_residual(op, [](Complex) { return Complex(0.0); }, 1.0, 1e-2) == 0.0);
  // e^{-z} in closed form: z u + theta u = 0
  CHECK(g_ode_residual(op, [](Complex z) { return std::exp(-z); }, Complex(0.7, 0.3), 1e-2) < 1e-8);
  // a function that is not a solution
  CHECK(g_ode_residual(op, [](Complex z) { return std::exp(z); }, 1.0, 1e-2) > 0.1);
}
