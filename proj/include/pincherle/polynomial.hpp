#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pincherle/cgamma.hpp"

namespace pincherle {

/// Coefficients in ascending powers: c[0] + c[1] x + ... + c[d] x^d.
using Polynomial = std::vector<Complex>;

/// Index of the highest nonzero coefficient; 0 for the zero polynomial.
std::size_t degree(std::span<const Complex> coeffs);
bool is_zero(std::span<const Complex> coeffs);
Polynomial trimmed(std::span<const Complex> coeffs);

Complex evaluate(std::span<const Complex> coeffs, Complex x);
Polynomial derivative(std::span<const Complex> coeffs);
Polynomial multiply(std::span<const Complex> lhs, std::span<const Complex> rhs);

/// lead * prod (x - r_i)
Polynomial from_roots(std::span<const Complex> roots, Complex lead);

/// Coefficients of c(x + shift) expanded in powers of x.
Polynomial taylor_shift(std::span<const Complex> coeffs, Complex shift);

struct RootOptions {
  int max_iterations = 500;
  double tolerance = 4e-16;  // relative step size at which a root is frozen
};

/// All roots of a polynomial with a nonzero leading coefficient, by
/// Aberth-Ehrlich simultaneous iteration with a companion-matrix fallback,
/// sorted by (real, imag). Throws RootFindingError on failure and
/// ParameterError for the zero polynomial.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, const RootOptions& options = {});

}  // namespace pincherle
