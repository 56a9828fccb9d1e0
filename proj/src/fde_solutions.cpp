#include "pincherle/fde_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pincherle/errors.hpp"

namespace pincherle {
namespace {

const std::string kMinus = "−";
const std::string kDot = "·";

void check_lead(const Polynomial& poly, const char* name) {
  if (poly.empty() || is_zero(poly)) throw ParameterError(std::string(name) + " must not vanish identically");
  for (Complex c : poly)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ParameterError(std::string(name) + " has a non-finite coefficient");
}

std::string signed_term(Complex c) {
  if (c.imag() == 0.0) return (c.real() < 0.0 ? kMinus : "+") + format_coefficient(std::abs(c.real()));
  return "+" + format_coefficient(c);
}

std::string linear_text(const LinearGamma& g, const std::string& var) {
  const double mag = std::abs(g.slope);
  const std::string v = (mag == 1.0 ? "" : format_coefficient(mag)) + var;
  if (g.slope > 0.0) return g.offset == 0.0 ? v : v + signed_term(g.offset);
  if (g.offset == 0.0) return kMinus + v;
  if (g.offset.imag() == 0.0 && g.offset.real() < 0.0) return kMinus + format_coefficient(-g.offset) + kMinus + v;
  return format_coefficient(g.offset) + kMinus + v;
}

std::string product_text(const std::vector<LinearGamma>& factors, const std::string& var) {
  std::string out;
  for (const auto& g : factors) {
    if (!out.empty()) out += kDot;
    out += "Γ(" + linear_text(g, var) + ")";
  }
  return out;
}

}  // namespace

FirstOrderFDE::FirstOrderFDE(Polynomial p, Polynomial q) : p_(trimmed(p)), q_(trimmed(q)) {
  check_lead(p_, "P(x)");
  check_lead(q_, "Q(x)");
}

FirstOrderFDE FirstOrderFDE::from_columns(std::span<const Complex> a0, std::span<const Complex> a1) {
  return {Polynomial(a0.begin(), a0.end()), taylor_shift(trimmed(a1), 1.0)};
}

FirstOrderFDE FirstOrderFDE::from_polynomials(std::span<const Complex> p_poly, std::span<const Complex> q_poly) {
  return {Polynomial(p_poly.begin(), p_poly.end()), Polynomial(q_poly.begin(), q_poly.end())};
}

FirstOrderFDE FirstOrderFDE::from_matrix(const CoefficientMatrix& a) {
  if (a.cols() != 2)
    throw OrderError("a first-order difference equation needs exactly two columns", std::to_string(a.cols()));
  const std::vector<Complex> a0 = a.column(0);
  const std::vector<Complex> a1 = a.column(1);
  return from_columns(a0, a1);
}

Complex solution_constant(Complex lead_p, Complex lead_q, std::size_t m, std::size_t n, std::size_t p) {
  const long long e = static_cast<long long>(m + n) - static_cast<long long>(p) + 1;
  const double sign = (e % 2 == 0) ? 1.0 : -1.0;
  return sign * lead_p / lead_q;
}

RootData coefficient_roots(const FirstOrderFDE& fde, SolutionForm form, std::size_t m, std::size_t n,
                           const RootOptions& options) {
  RootData out;
  out.rho = fde.p() == 0 ? std::vector<Complex>{} : polynomial_roots(fde.p_poly(), options);
  out.sigma = fde.q() == 0 ? std::vector<Complex>{} : polynomial_roots(fde.q_poly(), options);
  out.lead_p = fde.lead_p();
  out.lead_q = fde.lead_q();
  switch (form) {
    case SolutionForm::Direct:
      m = 0;
      n = fde.p();
      break;
    case SolutionForm::Reflected:
      m = fde.q();
      n = 0;
      break;
    case SolutionForm::Mixed:
      if (m > fde.q() || n > fde.p())
        throw OrderError("need 0 <= m <= q and 0 <= n <= p",
                         "m=" + std::to_string(m) + " n=" + std::to_string(n));
      break;
  }
  out.c = solution_constant(out.lead_p, out.lead_q, m, n, fde.p());
  return out;
}

MellinKernel gamma_quotient(const RootData& roots, std::size_t m, std::size_t n, int base_sheet) {
  const std::size_t p = roots.rho.size();
  const std::size_t q = roots.sigma.size();
  if (m > q || n > p)
    throw OrderError("need 0 <= m <= q and 0 <= n <= p", "m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                                              " p=" + std::to_string(p) + " q=" + std::to_string(q));
  std::vector<Complex> a(p);
  std::vector<Complex> b(q);
  for (std::size_t j = 0; j < p; ++j) a[j] = 1.0 + roots.rho[j];
  for (std::size_t k = 0; k < q; ++k) b[k] = 1.0 + roots.sigma[k];
  MellinKernel kernel = g_kernel(m, n, a, b);
  kernel.set_base(solution_constant(roots.lead_p, roots.lead_q, m, n, p), base_sheet);
  kernel.cancel_common_factors(kCancelTolerance);
  return kernel;
}

double fde_ratio_residual(const MellinKernel& kernel, const RootData& roots, Complex x) {
  const Complex log_f0 = kernel_log_eval(kernel, x);
  const Complex log_f1 = kernel_log_eval(kernel, x + 1.0);
  if (std::isinf(log_f0.real()) || std::isinf(log_f1.real()))
    throw PoleError("solution vanishes at the evaluation point (denominator gamma pole)");
  Complex expected = roots.ratio_constant();
  for (Complex r : roots.rho) expected *= x - r;
  for (Complex s : roots.sigma) expected /= x - s;
  const Complex ratio = std::exp(log_f1 - log_f0);
  return std::abs(ratio - expected) / std::abs(expected);
}

SpecialSolution pincherle_special_solution(std::span<const Complex> rho, std::span<const Complex> sigma,
                                           double anchor) {
  if (rho.empty() || sigma.size() + 1 != rho.size())
    throw ParameterError("need m roots rho and m - 1 roots sigma",
                         std::to_string(rho.size()) + " / " + std::to_string(sigma.size()));
  double max_re = -std::numeric_limits<double>::infinity();
  for (Complex r : rho) max_re = std::max(max_re, r.real());
  if (!(anchor > max_re))
    throw ContourError("anchor must lie right of every rho", "anchor=" + std::to_string(anchor) +
                                                                 " max Re rho=" + std::to_string(max_re));
  std::vector<Complex> a(rho.size());
  std::vector<Complex> b(sigma.size());
  for (std::size_t j = 0; j < rho.size(); ++j) a[j] = 1.0 + rho[j];
  for (std::size_t k = 0; k < sigma.size(); ++k) b[k] = 1.0 + sigma[k];
  SpecialSolution out{g_kernel(0, rho.size(), a, b), Contour{}};
  out.contour.anchor = anchor;
  return out;
}

std::string kernel_formula(const MellinKernel& kernel, const std::string& var) {
  std::string prefix;
  if (kernel.base != 1.0 || kernel.base_sheet != 0) {
    prefix = format_coefficient(kernel.base) + "^" + var;
    if (kernel.base_sheet != 0) prefix += "[sheet " + std::to_string(kernel.base_sheet) + "]";
  }
  std::string num = product_text(kernel.numerators(), var);
  const std::vector<LinearGamma> dens = kernel.denominators();
  std::string out = prefix;
  if (!num.empty()) out += (out.empty() ? "" : kDot) + num;
  if (out.empty()) out = "1";
  if (!dens.empty()) {
    const std::string den = product_text(dens, var);
    out += "/" + (dens.size() > 1 ? "(" + den + ")" : den);
  }
  return out;
}

std::string solution_form_name(SolutionForm form) {
  switch (form) {
    case SolutionForm::Direct:
      return "direct";
    case SolutionForm::Reflected:
      return "reflected";
    case SolutionForm::Mixed:
      return "mixed";
  }
  return "unknown";
}

}  // namespace pincherle
