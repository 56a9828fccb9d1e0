#pragma once

// Quad-precision complex arithmetic for residue summation. Residue series of
// Mellin-Barnes integrals are alternating sums whose terms can exceed the
// result by many orders of magnitude (e^{-z} from its Taylor series at z = 10
// loses nine digits), so they are accumulated at 113-bit precision.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "pincherle/cgamma.hpp"

namespace pincherle {

using WideReal = boost::multiprecision::cpp_bin_float_quad;
using WideComplex = boost::multiprecision::cpp_complex_quad;

inline WideComplex widen(Complex z) { return WideComplex(WideReal(z.real()), WideReal(z.imag())); }

inline Complex narrow(const WideComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// log Gamma on the same branch as log_gamma(), via a shifted Stirling series.
/// Independent of the Lanczos path. Throws PoleError at non-positive integers.
WideComplex log_gamma_wide(const WideComplex& z, double pole_tol = kPoleTolerance);

}  // namespace pincherle
