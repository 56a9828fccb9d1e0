#pragma once

// One coefficient table a[h][k], two readings:
//
//   ODE:  sum_h ( sum_k a[h][k] e^{-kt} ) psi^{(h)}(t) = 0
//   FDE:  sum_k ( sum_h a[h][k] (x+k)^h ) f(x+k)       = 0
//
// The ODE order is the FDE coefficient degree and vice versa. The matrix is
// the stored object; ODESpec and FDESpec are views that can rebuild it.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pincherle/polynomial.hpp"

namespace pincherle {

class CoefficientMatrix {
 public:
  /// Throws DegenerateMatrixError if the last row or last column is all
  /// zeros, and ParameterError for shape mismatches or non-finite entries.
  CoefficientMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);

  static CoefficientMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// m: derivative order of the ODE reading.
  std::size_t ode_order() const noexcept { return rows_ - 1; }
  /// p: shift order of the FDE reading.
  std::size_t fde_order() const noexcept { return cols_ - 1; }

  Complex operator()(std::size_t h, std::size_t k) const { return entries_[h * cols_ + k]; }
  const std::vector<Complex>& entries() const noexcept { return entries_; }

  std::vector<Complex> row(std::size_t h) const;
  std::vector<Complex> column(std::size_t k) const;
  CoefficientMatrix transposed() const;

  friend bool operator==(const CoefficientMatrix&, const CoefficientMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

struct ODESpec {
  std::size_t order = 0;            // m
  std::size_t exp_poly_degree = 0;  // p
  /// coefficients[h] is the polynomial in u = e^{-t} multiplying psi^{(h)}.
  std::vector<Polynomial> coefficients;

  const Polynomial& coefficient(std::size_t h) const { return coefficients.at(h); }
  CoefficientMatrix to_matrix() const;
  std::string render() const;
};

struct FDESpec {
  std::size_t order = 0;        // p
  std::size_t poly_degree = 0;  // m
  /// shifted_coefficients[k][h] = a[h][k], the coefficient of (x+k)^h.
  std::vector<Polynomial> shifted_coefficients;

  /// sum_h a[h][k] (x+k)^h expanded in powers of x.
  Polynomial coefficient(std::size_t k) const;
  CoefficientMatrix to_matrix() const;
  std::string render() const;
};

struct Orders {
  std::size_t ode_order = 0;
  std::size_t ode_exp_degree = 0;
  std::size_t fde_order = 0;
  std::size_t fde_poly_degree = 0;

  friend bool operator==(const Orders&, const Orders&) = default;
};

ODESpec as_ode(const CoefficientMatrix& a);
FDESpec as_fde(const CoefficientMatrix& a);

/// sum_k a[m][k] z^k; its roots z are the e^{-t} values of the ODE singular points.
Polynomial ode_singular_polynomial(const CoefficientMatrix& a);
/// sum_h a[h][0] z^h.
Polynomial fde_singular_polynomial(const CoefficientMatrix& a);

Orders orders(const CoefficientMatrix& a);

/// {"rows": R, "cols": C, "entries": [[re, im], ...]} in row-major order.
CoefficientMatrix matrix_from_json(std::string_view json);
std::string matrix_to_json(const CoefficientMatrix& a);

/// JSON description of one reading, for the `dual` command.
std::string ode_to_json(const ODESpec& ode);
std::string fde_to_json(const FDESpec& fde);

/// Shortest round-trippable text for a coefficient: "2", "-0.5", "(1+2i)".
std::string format_coefficient(Complex c);

}  // namespace pincherle
