#include <random>

#include "doctest.h"
#include "json.hpp"
#include "pincherle/duality.hpp"
#include "pincherle/errors.hpp"

using namespace pincherle;

namespace {
const CoefficientMatrix kBeta = CoefficientMatrix::from_rows({{0.0, -1.0}, {1.0, -1.0}});
}

TEST_CASE("ODE reading") {
  const ODESpec ode = as_ode(kBeta);
  CHECK(ode.order == 1);
  CHECK(ode.exp_poly_degree == 1);
  CHECK(ode.coefficient(0) == Polynomial{0.0, -1.0});
  CHECK(ode.coefficient(1) == Polynomial{1.0, -1.0});
  CHECK(ode.render() == "−e^{−t}·ψ + (1−e^{−t})·ψ′ = 0");

  const ODESpec one = as_ode(CoefficientMatrix::from_rows({{1.0}}));
  CHECK(one.order == 0);
  CHECK(one.exp_poly_degree == 0);
  CHECK(one.render() == "ψ = 0");

  const CoefficientMatrix a = CoefficientMatrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
  const ODESpec wide = as_ode(a);
  CHECK(wide.order == 1);
  CHECK(wide.exp_poly_degree == 2);
  CHECK(wide.coefficient(1) == Polynomial{4.0, 5.0, 6.0});
}

TEST_CASE("FDE reading") {
  const FDESpec fde = as_fde(kBeta);
  CHECK(fde.order == 1);
  CHECK(fde.poly_degree == 1);
  CHECK(fde.render() == "x·f(x) − (x+2)·f(x+1) = 0");
  // f(x) = Gamma(x) / Gamma(x + 2) = 1 / (x (x + 1)) satisfies it exactly
  for (double x : {0.5, 1.0, 3.25, 7.0}) {
    const auto f = [](double t) { return 1.0 / (t * (t + 1.0)); };
    CHECK(std::abs(evaluate(fde.coefficient(0), x) * f(x) + evaluate(fde.coefficient(1), x) * f(x + 1.0)) < 1e-15);
  }
  CHECK(as_fde(CoefficientMatrix::from_rows({{1.0}})).render() == "f(x) = 0");
}

TEST_CASE("singular polynomials") {
  CHECK(ode_singular_polynomial(kBeta) == Polynomial{1.0, -1.0});
  CHECK(fde_singular_polynomial(kBeta) == Polynomial{0.0, 1.0});
  CHECK(ode_singular_polynomial(CoefficientMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}})) ==
        Polynomial{0.0, 1.0});
  CHECK(fde_singular_polynomial(CoefficientMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})) == Polynomial{1.0, 1.0});
  // the identity has a nonzero last row and column
  CHECK(fde_singular_polynomial(CoefficientMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}})) == Polynomial{1.0, 0.0});
}

TEST_CASE("orders") {
  CHECK(orders(CoefficientMatrix(2, 4, std::vector<Complex>(8, 1.0))) == Orders{1, 3, 3, 1});
  CHECK(orders(CoefficientMatrix::from_rows({{1.0}})) == Orders{0, 0, 0, 0});
  CHECK(orders(CoefficientMatrix(3, 2, std::vector<Complex>(6, 1.0))) == Orders{2, 1, 1, 2});
}

TEST_CASE("degenerate and malformed matrices") {
  CHECK_THROWS_AS(CoefficientMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}}), DegenerateMatrixError);
  CHECK_THROWS_AS(CoefficientMatrix::from_rows({{1.0, 0.0}, {1.0, 0.0}}), DegenerateMatrixError);
  CHECK_THROWS_AS(CoefficientMatrix::from_rows({{1.0, 1.0}, {1.0}}), ParameterError);
  CHECK_THROWS_AS(CoefficientMatrix(0, 1, {}), ParameterError);
  CHECK_THROWS_AS(CoefficientMatrix(1, 1, {Complex(std::nan(""), 0.0)}), ParameterError);
  CHECK_THROWS_AS(matrix_from_json("{"), ParameterError);
  CHECK_THROWS_AS(matrix_from_json(R"({"rows": 1})"), ParameterError);
  CHECK_THROWS_AS(matrix_from_json(R"({"rows": 1, "cols": 1, "entries": [[1, 2, 3]]})"), ParameterError);
  CHECK_THROWS_AS(matrix_from_json(R"({"rows": 2, "cols": 1, "entries": [1]})"), ParameterError);
}

TEST_CASE("JSON shape and round trips") {
  const CoefficientMatrix m = matrix_from_json(R"({"rows": 2, "cols": 2, "entries": [0, -1, [1, 0], [-1, 0]]})");
  CHECK(m == kBeta);
  const auto j = nlohmann::json::parse(matrix_to_json(kBeta));
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 2);
  CHECK(j["entries"][1][0] == -1.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + i % 4, c = 1 + (i / 4) % 5;
    std::vector<Complex> e(r * c);
    for (auto& x : e) x = Complex(u(rng), u(rng)) / 3.0;
    const CoefficientMatrix a(r, c, e);
    CHECK(matrix_from_json(matrix_to_json(a)) == a);
    CHECK(as_ode(a).to_matrix() == a);
    CHECK(as_fde(a).to_matrix() == a);
    CHECK(a.transposed().transposed() == a);
  }
}

TEST_CASE("reading JSON carries the rendered equation") {
  const auto j = nlohmann::json::parse(fde_to_json(as_fde(kBeta)));
  CHECK(j["kind"] == "fde");
  CHECK(j["equation"] == "x·f(x) − (x+2)·f(x+1) = 0");
  const auto o = nlohmann::json::parse(ode_to_json(as_ode(kBeta)));
  CHECK(o["kind"] == "ode");
  CHECK(o["order"] == 1);
}

TEST_CASE("coefficient text") {
  CHECK(format_coefficient(2.0) == "2");
  CHECK(format_coefficient(-0.5) == "-0.5");
  CHECK(format_coefficient({1.0, 2.0}) == "(1+2i)");
  CHECK(format_coefficient({0.0, -3.0}) == "(-3i)");
}
