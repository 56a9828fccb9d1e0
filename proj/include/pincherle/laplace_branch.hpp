#pragma once

// ODE side of the duality for first-order equations
//
//   A1(e^{-t}) psi'(t) + A0(e^{-t}) psi(t) = 0,
//
// solved in closed form by partial fractions in u = e^{-t}, and mapped to the
// difference-equation side by f(x) = \int_0^inf e^{-xt} psi(t) dt.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pincherle/duality.hpp"
#include "pincherle/polynomial.hpp"

namespace pincherle {

struct PsiFactor {
  Complex root;   // z_i, a root of A1
  Complex power;  // mu_i
};

/// psi(t) = C e^{lambda t} exp(K e^{-t}) prod_i (1 - e^{-t}/z_i)^{mu_i}.
/// K is nonzero only when deg A0 = deg A1 + 1.
struct ClosedFormPsi {
  Complex exponent_lambda = 0.0;
  std::vector<PsiFactor> factors;
  Complex normalization = 1.0;
  Complex exp_coefficient = 0.0;

  Complex eval(Complex t) const;
  /// psi'(t) / psi(t).
  Complex log_derivative(Complex t) const;
};

/// Throws RepeatedRootError for repeated roots of A1 (or a root at u = 0 that
/// A0 does not share), DegreeError when deg A0 > deg A1 + 1, ParameterError
/// when A1 vanishes identically.
ClosedFormPsi solve_first_order_ode(std::span<const Complex> a0, std::span<const Complex> a1);

struct LaplaceResult {
  Complex value;
  double error = 0.0;
  double truncation = 0.0;
};

/// \int_0^T e^{-xt} psi(t) dt with T chosen so the tail is below tol (T is
/// capped at t_max when t_max > 0). Throws DivergenceError when Re x <= Re
/// lambda, when psi is not integrable at t = 0, or when a factor is singular
/// inside (0, inf); QuadratureError when the tolerance is not met.
LaplaceResult laplace_transform_detailed(const ClosedFormPsi& psi, Complex x, double t_max, double tol);
Complex laplace_transform(const ClosedFormPsi& psi, Complex x, double t_max, double tol);

using Evaluator = std::function<Complex(Complex)>;

/// |sum_k [sum_h a[h][k] (x+k)^h] f(x+k)| / max_k |term_k|; 0 when every
/// term vanishes.
double fde_numeric_residual(const CoefficientMatrix& a, const Evaluator& f, Complex x);

struct PochhammerPoint {
  Complex x;
  Complex f;
  double quadrature_error = 0.0;
  double residual = 0.0;
};

struct PochhammerReport {
  ClosedFormPsi psi;
  std::vector<PochhammerPoint> points;
  double max_residual = 0.0;
  /// Largest relative distance from a returned z_i to the nearest root of the
  /// ODE singular polynomial.
  double singular_point_mismatch = 0.0;
  /// For two-column matrices: max relative spread of f / f_gamma_quotient
  /// over x, x+1, x+2 (the ratio is 1-periodic in x).
  std::optional<double> gamma_quotient_ratio_spread;
};

/// Full first-order pipeline: rows 0 and 1 of `a` give A0 and A1, psi is
/// solved in closed form, f is its Laplace transform and the difference
/// equation read from the same matrix is checked at every x.
PochhammerReport pochhammer_pipeline(const CoefficientMatrix& a, std::span<const Complex> xs, double tol);

}  // namespace pincherle
