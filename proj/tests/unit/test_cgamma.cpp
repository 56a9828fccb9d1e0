#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pincherle/cgamma.hpp"
#include "pincherle/errors.hpp"
#include "pincherle/wide.hpp"

using namespace pincherle;

TEST_CASE("log_gamma at integers and one half") {
  CHECK(std::abs(log_gamma(1.0)) == 0.0);
  CHECK(log_gamma(5.0).real() == doctest::Approx(std::log(24.0)).epsilon(1e-15));
  CHECK(std::abs(log_gamma(5.0).imag()) < 1e-15);

  // Gamma(1/2) = int_0^inf t^{-1/2} e^{-t} dt, by double-exponential quadrature
  boost::math::quadrature::exp_sinh<double> integrator;
  const double g = integrator.integrate([](double t) { return std::exp(-t) / std::sqrt(t); });
  CHECK(std::abs(log_gamma(0.5).real() - std::log(g)) < 1e-14);
  CHECK(log_gamma(0.5).real() == doctest::Approx(0.5723649429247001).epsilon(1e-15));
}

TEST_CASE("log_gamma matches libm on the positive axis") {
  for (double x = 0.05; x < 170.0; x *= 1.37) {
    const Complex lg = log_gamma(x);
    CHECK(std::abs(lg.real() - std::lgamma(x)) <= 2e-15 * std::max(1.0, std::abs(std::lgamma(x))));
    CHECK(lg.imag() == 0.0);
  }
}

TEST_CASE("exp(log_gamma) on the negative axis matches tgamma") {
  for (double x : {-0.5, -1.25, -2.7, -7.1, -13.6}) {
    const Complex g = std::exp(log_gamma(x));
    CHECK(std::abs(g.real() - std::tgamma(x)) <= 1e-13 * std::abs(std::tgamma(x)));
    CHECK(std::abs(g.imag()) <= 1e-13 * std::abs(std::tgamma(x)));
  }
}

TEST_CASE("modulus on vertical lines from reflection identities") {
  for (double y : {0.1, 1.0, 3.0, 10.0, 40.0}) {
    const double half = 0.5 * (std::log(kPi) - std::log(std::cosh(kPi * y)));
    const double one = 0.5 * (std::log(kPi * y) - std::log(std::sinh(kPi * y)));
    CHECK(log_gamma({0.5, y}).real() == doctest::Approx(half).epsilon(1e-13));
    CHECK(log_gamma({1.0, y}).real() == doctest::Approx(one).epsilon(1e-13));
  }
}

TEST_CASE("recurrence, conjugation and duplication") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  for (int i = 0; i < 300; ++i) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z.imag()) < 1e-3) continue;
    const Complex lg = log_gamma(z);
    CHECK(std::abs(log_gamma(z + 1.0) - lg - std::log(z)) < 1e-12 * std::max(1.0, std::abs(lg)));
    CHECK(std::abs(log_gamma(std::conj(z)) - std::conj(lg)) < 1e-13 * std::max(1.0, std::abs(lg)));
    // Gamma(z) Gamma(z + 1/2) = 2^{1-2z} sqrt(pi) Gamma(2z), compared modulo 2 pi i
    const Complex d = lg + log_gamma(z + 0.5) - (1.0 - 2.0 * z) * std::log(2.0) - 0.5 * std::log(kPi) -
                      log_gamma(2.0 * z);
    CHECK(std::abs(std::exp(d) - 1.0) < 1e-11);
  }
}

TEST_CASE("log_gamma agrees with the independent quad-precision Stirling series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z(u(rng), u(rng));
    if (detect_pole(z, 1e-3).is_pole) continue;
    const Complex lg = log_gamma(z);
    CHECK(std::abs(lg - narrow(log_gamma_wide(widen(z)))) < 1e-13 * std::max(1.0, std::abs(lg)));
  }
}

TEST_CASE("log_gamma is continuous across the real axis away from the cut") {
  for (double x : {0.3, 2.0, 15.0}) {
    const Complex above = log_gamma({x, 1e-9});
    const Complex below = log_gamma({x, -1e-9});
    CHECK(std::abs(above - below) < 1e-8);
  }
}

TEST_CASE("poles") {
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-4.0), PoleError);
  CHECK_THROWS_AS(gamma({-2.0, 1e-12}), PoleError);

  const PoleReport a = detect_pole(-3.0, 1e-9);
  CHECK(a.is_pole);
  CHECK(a.pole_index == 3);
  CHECK(a.distance == 0.0);
  const PoleReport b = detect_pole(0.5, 1e-9);
  CHECK_FALSE(b.is_pole);
  CHECK(b.distance == doctest::Approx(0.5));
  const PoleReport c = detect_pole({-2.0, 1e-12}, 1e-9);
  CHECK(c.is_pole);
  CHECK(c.pole_index == 2);
}

TEST_CASE("gamma and log_sin_pi") {
  CHECK(std::abs(pincherle::gamma(Complex(4.0)) - 6.0) < 1e-13);
  for (Complex z : {Complex(0.3, 0.2), Complex(-1.7, 0.5), Complex(2.2, -0.9)})
    CHECK(std::abs(std::exp(log_sin_pi(z)) - std::sin(kPi * z)) < 1e-13 * std::abs(std::sin(kPi * z)));
  // far from the axis sin overflows but its log does not
  const Complex big = log_sin_pi({0.25, 400.0});
  CHECK(std::isfinite(big.real()));
  CHECK(big.real() == doctest::Approx(kPi * 400.0 - std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer({2.5, 1.0}, 0) == Complex(1.0));
  CHECK(pochhammer(1.0, 4) == Complex(24.0));
  CHECK(pochhammer(-2.0, 4) == Complex(0.0));
  CHECK(pochhammer(-2.0, 2) == Complex(2.0));
  // beyond the product range: (1)_n = n!
  CHECK(pochhammer(1.0, 100).real() == doctest::Approx(std::tgamma(101.0)).epsilon(1e-12));
  const Complex a(0.3, 0.7);
  Complex prod = 1.0;
  for (int k = 0; k < 80; ++k) prod *= a + static_cast<double>(k);
  CHECK(std::abs(pochhammer(a, 80) - prod) < 1e-11 * std::abs(prod));
}

TEST_CASE("asymptotic magnitude on vertical lines") {
  for (double eta : {1.0, 50.0, 1000.0})
    CHECK(asymptotic_log_abs_gamma(0.5, eta) ==
          doctest::Approx(0.5 * std::log(2.0 * kPi) - kPi * eta / 2.0).epsilon(1e-15));
  for (double a : {0.5, 1.0, 2.0})
    CHECK(std::abs(asymptotic_log_abs_gamma(a, 50.0) - log_gamma({a, 50.0}).real()) < 0.02);
  CHECK(asymptotic_log_abs_gamma(2.0, -30.0) == asymptotic_log_abs_gamma(2.0, 30.0));
  CHECK_THROWS_AS(asymptotic_log_abs_gamma(1.0, 0.5), DomainError);
}
