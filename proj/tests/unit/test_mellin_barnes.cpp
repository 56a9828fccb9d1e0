#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "pincherle/errors.hpp"
#include "pincherle/mellin_barnes.hpp"
#include "pincherle/wide.hpp"

using namespace pincherle;

namespace {

MellinKernel g(std::size_t m, std::size_t n, std::vector<Complex> a, std::vector<Complex> b) {
  return g_kernel(m, n, a, b);
}

// z^b e^{-z} = sum_l (-1)^l z^{b+l} / l!
Complex exp_oracle(Complex z, double b) { return std::pow(z, b) * std::exp(-z); }

}  // namespace

TEST_CASE("kernel_log_eval") {
  const MellinKernel empty;
  CHECK(kernel_log_eval(empty, {0.3, 2.0}) == Complex(0.0));
  const MellinKernel one = g(1, 0, {}, {0.7});
  CHECK(std::abs(kernel_log_eval(one, -0.3)) < 1e-15);  // Gamma(b - s) at s = b - 1
  CHECK_THROWS_AS(kernel_log_eval(one, 0.7), PoleError);
  // a denominator pole makes the kernel vanish
  const MellinKernel den = g(0, 0, {}, {0.0});
  CHECK(std::isinf(kernel_log_eval(den, -1.0).real()));

  // 2F1 embedding kernel against a product built from the independent wide log-gamma
  const MellinKernel k = g(1, 2, {0.0, 0.0}, {0.0, -1.0});
  for (double t : {-3.0, -0.5, 0.0, 2.0, 7.5}) {
    const Complex s(-0.5, t);
    const WideComplex ws = widen(s);
    const WideComplex prod = exp(log_gamma_wide(-ws) + 2 * log_gamma_wide(WideComplex(1) + ws) -
                                 log_gamma_wide(WideComplex(2) + ws));
    const Complex want = narrow(prod);
    CHECK(std::abs(std::exp(kernel_log_eval(k, s)) - want) < 1e-12 * std::abs(want));
  }
}

TEST_CASE("pole families") {
  const auto right = pole_families(g(1, 0, {}, {0.0}), 4).right_opening;
  REQUIRE(right.size() == 4);
  for (std::size_t l = 0; l < 4; ++l) CHECK(right[l].location == Complex(static_cast<double>(l)));

  const auto left = pole_families(g(0, 1, {0.0}, {}), 3).left_opening;
  REQUIRE(left.size() == 3);
  CHECK(left[0].location == Complex(-1.0));
  CHECK(left[2].location == Complex(-3.0));

  const auto merged = pole_families(g(2, 0, {}, {0.0, 1.0}), 3).right_opening;
  CHECK(merged[0].order == 1);
  CHECK(merged[1].location == Complex(1.0));
  CHECK(merged[1].order == 2);

  const auto fox = pole_families(h_kernel(1, 0, {}, {}, std::vector<Complex>{0.0}, std::vector<double>{2.0}), 3);
  CHECK(fox.right_opening[1].location == Complex(0.5));
  CHECK_THROWS_AS(pole_families(g(1, 0, {}, {0.0}), 0), ParameterError);
}

TEST_CASE("contour choice") {
  const Contour c = choose_contour(g(1, 0, {}, {0.0}));
  CHECK(c.kind == ContourKind::Vertical);
  CHECK(c.anchor == -0.5);

  // Gauss embedding: Gamma(a + s) poles at -1, -2, ... and Gamma(-s) poles at 0, 1, ...
  const Contour e = choose_contour(g(1, 2, {0.0, 0.0}, {0.0, -1.0}));
  CHECK(e.anchor > -1.0);
  CHECK(e.anchor < 0.0);

  CHECK(choose_contour(g(0, 1, {0.0}, {})).anchor == -0.5);
  CHECK(choose_contour(g(0, 0, {}, {1.0})).anchor == 0.0);

  // Gamma(s - 1/2) Gamma(-s): pole 1/2 of the left family sits right of pole 0
  const Contour ind = choose_contour(g(1, 1, {1.5}, {0.0}));
  CHECK(ind.kind == ContourKind::Indented);
  CHECK(ind.detours.size() >= 1);

  CHECK_THROWS_AS(choose_contour(g(1, 1, {1.0}, {0.0})), ContourError);
}

TEST_CASE("indented contour integral") {
  // G^{1,1}_{1,1}[z | a; b] = Gamma(1 - a + b) z^b (1 + z)^{a - b - 1}
  const MellinKernel k = g(1, 1, {1.5}, {0.0});
  const Contour c = choose_contour(k);
  for (double z : {0.3, 1.0, 2.5}) {
    const EvalResult r = integrate(k, z, c, 1e-12);
    const double want = -2.0 * std::sqrt(kPi) * std::sqrt(1.0 + z);
    CHECK(std::abs(r.value - want) < 1e-10 * std::abs(want));
    CHECK(r.contour.kind == ContourKind::Indented);
  }
  Contour missing = c;
  missing.detours.clear();
  CHECK_THROWS_AS(integrate(k, 1.0, missing, 1e-12), ContourError);
}

TEST_CASE("exponential kernel by quadrature and by residues") {
  const MellinKernel k0 = g(1, 0, {}, {0.0});
  const EvalResult q = integrate(k0, 1.0, choose_contour(k0), 1e-12);
  CHECK(std::abs(q.value - std::exp(-1.0)) < 1e-11);
  CHECK(q.err_estimate < 1e-10);
  CHECK(q.method == Method::Quadrature);

  const MellinKernel kh = g(1, 0, {}, {0.5});
  const EvalResult r = residue_series(kh, 2.0, Side::Right, 200, 1e-15);
  CHECK(std::abs(r.value - exp_oracle(2.0, 0.5)) < 1e-15);
  CHECK(r.method == Method::ResiduesRight);
  const EvalResult q2 = integrate(kh, 2.0, choose_contour(kh), 1e-12);
  CHECK(std::abs(q2.value - std::sqrt(2.0) * std::exp(-2.0)) < 1e-11);

  for (Complex z : {Complex(0.1), Complex(10.0), Complex(1.0, 1.0)}) {
    const EvalResult s = residue_series(k0, z, Side::Right, 500, 1e-15);
    CHECK(std::abs(s.value - std::exp(-z)) < 1e-14 * std::max(1.0, std::abs(std::exp(-z))));
  }
}

TEST_CASE("residue series errors") {
  const MellinKernel k0 = g(1, 0, {}, {0.0});
  CHECK_THROWS_AS(residue_series(k0, 1.0, Side::Right, 0, 1e-15), NonConvergentSeriesError);
  CHECK_THROWS_AS(residue_series(k0, 1.0, Side::Left, 100, 1e-15), NonConvergentSeriesError);
  CHECK_THROWS_AS(residue_series(g(2, 0, {}, {0.0, 1.0}), 1.0, Side::Right, 100, 1e-15), HigherOrderPoleError);
}

TEST_CASE("left residues") {
  // G^{0,1}_{1,0}[z | 1] = e^{-1/z}
  const MellinKernel k = g(0, 1, {1.0}, {});
  const EvalResult r = residue_series(k, 2.0, Side::Left, 200, 1e-15);
  CHECK(std::abs(r.value - std::exp(-0.5)) < 1e-15);
  const EvalResult q = integrate(k, 2.0, choose_contour(k), 1e-12);
  CHECK(std::abs(q.value - r.value) < 1e-11);
}

TEST_CASE("convergence classes") {
  const MellinKernel k0 = g(1, 0, {}, {0.0});
  CHECK(decay_rate(k0) == doctest::Approx(kPi / 2));
  CHECK(convergence_class(k0, 1.0) == ConvergenceClass::Absolute);
  CHECK(convergence_class(k0, std::polar(1.0, 1.5)) == ConvergenceClass::Absolute);
  CHECK(convergence_class(k0, std::polar(1.0, 1.6)) == ConvergenceClass::Divergent);

  const MellinKernel gauss = g(1, 2, {0.0, 0.0}, {0.0, -1.0});
  CHECK(decay_rate(gauss) == doctest::Approx(kPi));
  CHECK(convergence_class(gauss, 0.5) == ConvergenceClass::Absolute);

  // Gamma(1/2 - s) / Gamma(1 + s): balanced
  const MellinKernel balanced = g(1, 0, {}, {0.5, 0.0});
  CHECK(decay_rate(balanced) == 0.0);
  CHECK(convergence_class(balanced, std::polar(1.0, 0.3)) == ConvergenceClass::Divergent);
  CHECK(convergence_class(balanced, 1.0) == ConvergenceClass::Conditional);
  CHECK(algebraic_exponent(balanced, 0.0) == doctest::Approx(-0.5));
  CHECK(convergence_class(g(1, 0, {}, {0.0, 0.0}), 1.0) == ConvergenceClass::Divergent);

  CHECK(convergence_class(MellinKernel{}, 1.0) == ConvergenceClass::Divergent);
}

TEST_CASE("integrate rejections") {
  const MellinKernel k0 = g(1, 0, {}, {0.0});
  CHECK_THROWS_AS(integrate(MellinKernel{}, 1.0, Contour{}, 1e-10), ConvergenceError);
  CHECK_THROWS_AS(integrate(k0, 0.0, choose_contour(k0), 1e-10), ParameterError);
  CHECK_THROWS_AS(integrate(k0, -1.0, choose_contour(k0), 1e-10), ConvergenceError);
  IntegrateOptions tiny;
  tiny.max_nodes = 30;
  CHECK_THROWS_AS(integrate(k0, 1.0, choose_contour(k0), 1e-14, tiny), QuadratureError);
}

TEST_CASE("node budget from the environment") {
  ::setenv("MB_MAX_NODES", "1234", 1);
  CHECK(default_max_nodes() == 1234);
  ::unsetenv("MB_MAX_NODES");
  CHECK(default_max_nodes() == 200000);
}

TEST_CASE("branch override and base sheets") {
  const MellinKernel k0 = g(1, 0, {}, {0.5});
  IntegrateOptions o;
  o.arg_override = 0.0;
  const EvalResult r = integrate(k0, 2.0, choose_contour(k0), 1e-12, o);
  CHECK(r.arg_z == 0.0);
  MellinKernel sheet = k0;
  sheet.set_base(1.0, 0);
  CHECK(sheet.log_base == Complex(0.0));
  sheet.set_base(-1.0, 1);
  CHECK(sheet.log_base.imag() == doctest::Approx(3.0 * kPi));
  CHECK_THROWS_AS(sheet.set_base(0.0), ParameterError);
}

TEST_CASE("truncation and sampling") {
  const MellinKernel k0 = g(1, 0, {}, {0.0});
  const double t1 = truncation_height(k0, 1.0, -0.5, 1e-8);
  const double t2 = truncation_height(k0, 1.0, -0.5, 1e-14);
  CHECK(t1 > 0.0);
  CHECK(t2 > t1);
  const auto samples = sample_integrand(k0, 1.0, choose_contour(k0), 5);
  REQUIRE(samples.size() == 5);
  CHECK(samples[2].im_s == 0.0);
  CHECK(std::abs(samples[2].value - std::tgamma(0.5)) < 1e-14);
  CHECK(samples[0].im_s == -samples[4].im_s);
}

TEST_CASE("names") {
  CHECK(method_name(Method::ResiduesLeft) == "residues_left");
  CHECK(contour_kind_name(ContourKind::Indented) == "indented");
}
