#pragma once

// Closed-form solutions of the first-order difference equation
//
//   P(x) f(x) + Q(x) f(x+1) = 0,   P(x) = sum_h a[h][0] x^h,
//                                  Q(x) = sum_h a[h][1] (x+1)^h,
//
// as gamma quotients c^x prod Gamma(...) / prod Gamma(...) built from the
// roots rho of P and sigma of Q (Q already expanded in x).

#include <cstddef>
#include <string>
#include <vector>

#include "pincherle/duality.hpp"
#include "pincherle/mellin_barnes.hpp"
#include "pincherle/polynomial.hpp"

namespace pincherle {

class FirstOrderFDE {
 public:
  /// Raw matrix columns: a0[h] = a[h][0], a1[h] = a[h][1] (coefficients of
  /// (x+1)^h). Trailing zeros are dropped.
  static FirstOrderFDE from_columns(std::span<const Complex> a0, std::span<const Complex> a1);
  /// P and Q both already in powers of x.
  static FirstOrderFDE from_polynomials(std::span<const Complex> p_poly, std::span<const Complex> q_poly);
  /// Two-column coefficient matrix.
  static FirstOrderFDE from_matrix(const CoefficientMatrix& a);

  const Polynomial& p_poly() const noexcept { return p_; }
  const Polynomial& q_poly() const noexcept { return q_; }
  std::size_t p() const noexcept { return p_.size() - 1; }
  std::size_t q() const noexcept { return q_.size() - 1; }
  Complex lead_p() const { return p_.back(); }
  Complex lead_q() const { return q_.back(); }

 private:
  FirstOrderFDE(Polynomial p, Polynomial q);
  Polynomial p_;
  Polynomial q_;
};

enum class SolutionForm {
  Direct,     // n = p, m = 0
  Reflected,  // n = 0, m = q
  Mixed,      // general (m, n)
};

struct RootData {
  std::vector<Complex> rho;
  std::vector<Complex> sigma;
  Complex c;  // constant of the form requested from coefficient_roots
  Complex lead_p;
  Complex lead_q;

  /// -lead_p / lead_q: f(x+1)/f(x) = ratio_constant() prod(x - rho) / prod(x - sigma).
  Complex ratio_constant() const { return -lead_p / lead_q; }
};

/// (-1)^{m+n-p+1} lead_p / lead_q.
Complex solution_constant(Complex lead_p, Complex lead_q, std::size_t m, std::size_t n, std::size_t p);

/// Roots of P and Q and the constant c for the given form (for Mixed, the
/// (m, n) pair is needed to fix c).
RootData coefficient_roots(const FirstOrderFDE& fde, SolutionForm form = SolutionForm::Direct, std::size_t m = 0,
                           std::size_t n = 0, const RootOptions& options = {});

inline constexpr double kCancelTolerance = 1e-12;

/// Kernel in the variable x of
///   c^x prod_{j<=n} G(x - rho_j) prod_{k<=m} G(1 + sigma_k - x)
///       / [prod_{j>n} G(1 + rho_j - x) prod_{k>m} G(x - sigma_k)],
/// i.e. a G-type kernel with a_j = 1 + rho_j, b_k = 1 + sigma_k and base c.
/// Identical numerator/denominator factors (within kCancelTolerance) are
/// removed. Throws OrderError unless m <= q and n <= p.
MellinKernel gamma_quotient(const RootData& roots, std::size_t m, std::size_t n, int base_sheet = 0);

/// Relative mismatch between f(x+1)/f(x) from the kernel and the ratio the
/// difference equation demands. Throws PoleError when f(x) or f(x+1) hits a
/// gamma pole or zero.
double fde_ratio_residual(const MellinKernel& kernel, const RootData& roots, Complex x);

struct SpecialSolution {
  MellinKernel kernel;
  Contour contour;
};

/// prod Gamma(x - rho) / prod Gamma(x - sigma) with a vertical line at
/// Re x = anchor, for the case a[q][1] = 0 where the gamma quotient has no
/// constant. Needs sigma.size() + 1 == rho.size(); throws ContourError unless
/// anchor > max Re rho.
SpecialSolution pincherle_special_solution(std::span<const Complex> rho, std::span<const Complex> sigma,
                                           double anchor);

/// Human-readable formula of a kernel in the variable `var`,
/// e.g. "c^x·Γ(x)/Γ(x+2)".
std::string kernel_formula(const MellinKernel& kernel, const std::string& var = "x");

std::string solution_form_name(SolutionForm form);

}  // namespace pincherle
