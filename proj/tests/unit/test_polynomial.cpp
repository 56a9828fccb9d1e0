#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pincherle/errors.hpp"
#include "pincherle/polynomial.hpp"

using namespace pincherle;

namespace {
bool contains(const std::vector<Complex>& roots, Complex r, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](Complex x) { return std::abs(x - r) < tol; });
}
}  // namespace

TEST_CASE("basic polynomial arithmetic") {
  const Polynomial p = {1.0, -3.0, 2.0};  // 2x^2 - 3x + 1
  CHECK(degree(p) == 2);
  CHECK(evaluate(p, 2.0) == Complex(3.0));
  CHECK(derivative(p) == Polynomial{-3.0, 4.0});
  CHECK(multiply(Polynomial{1.0, 1.0}, Polynomial{-1.0, 1.0}) == Polynomial{-1.0, 0.0, 1.0});
  CHECK(trimmed(Polynomial{1.0, 2.0, 0.0, 0.0}) == Polynomial{1.0, 2.0});
  CHECK(is_zero(Polynomial{0.0, 0.0}));
  CHECK(from_roots(std::vector<Complex>{1.0, 2.0}, 3.0) == Polynomial{6.0, -9.0, 3.0});
}

TEST_CASE("taylor shift agrees with evaluation at shifted points") {
  const Polynomial p = {0.5, -1.0, 2.0, 0.25};
  const Polynomial q = taylor_shift(p, Complex(1.5, -0.5));
  for (Complex x : {Complex(0.0), Complex(1.0, 2.0), Complex(-3.0, 0.5)})
    CHECK(std::abs(evaluate(q, x) - evaluate(p, x + Complex(1.5, -0.5))) < 1e-12);
}

TEST_CASE("roots from known factors") {
  const auto r1 = polynomial_roots(from_roots(std::vector<Complex>{1.0, 2.0}, 1.0));
  REQUIRE(r1.size() == 2);
  CHECK(contains(r1, 1.0, 1e-13));
  CHECK(contains(r1, 2.0, 1e-13));

  const auto r2 = polynomial_roots(Polynomial{1.0, 0.0, 1.0});
  REQUIRE(r2.size() == 2);
  CHECK(contains(r2, Complex(0.0, 1.0), 1e-14));
  CHECK(contains(r2, Complex(0.0, -1.0), 1e-14));

  CHECK(polynomial_roots(Polynomial{2.0}).empty());
  CHECK_THROWS_AS(polynomial_roots(Polynomial{0.0, 0.0}), ParameterError);
}

TEST_CASE("random roots are recovered") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> roots(1 + trial % 6);
    for (auto& r : roots) r = Complex(u(rng), u(rng));
    const auto found = polynomial_roots(from_roots(roots, Complex(u(rng) + 4.0, 0.0)));
    REQUIRE(found.size() == roots.size());
    for (Complex r : roots) CHECK(contains(found, r, 1e-8));
  }
}

TEST_CASE("roots are sorted by real then imaginary part") {
  const auto r = polynomial_roots(from_roots(std::vector<Complex>{{2.0, 0.0}, {-1.0, 1.0}, {-1.0, -1.0}}, 1.0));
  REQUIRE(r.size() == 3);
  CHECK(r[0].real() < -0.9);
  CHECK(r[0].imag() < 0.0);
  CHECK(r[1].imag() > 0.0);
  CHECK(r[2].real() == doctest::Approx(2.0));
}
