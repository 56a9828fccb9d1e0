#pragma once

#include <cstddef>
#include <functional>

#include "pincherle/cgamma.hpp"

namespace pincherle {

struct QuadratureResult {
  Complex value;
  double error = 0.0;         // sum of panel |K15 - G7| plus a rounding floor
  double abs_integral = 0.0;  // integral of |f|, for rounding estimates
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-12;
  std::size_t max_evaluations = 200000;
  std::size_t initial_panels = 1;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a complex-valued
/// function over [a, b]. The worst panel is bisected until the summed error
/// estimate meets max(abs_tol, rel_tol |I|), drops to the rounding floor, or
/// the evaluation budget runs out (converged = false).
QuadratureResult gauss_kronrod(const std::function<Complex(double)>& f, double a, double b,
                               const QuadratureOptions& options);

}  // namespace pincherle
