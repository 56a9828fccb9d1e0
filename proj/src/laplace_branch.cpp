#include "pincherle/laplace_branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pincherle/errors.hpp"
#include "pincherle/fde_solutions.hpp"
#include "pincherle/quadrature.hpp"

namespace pincherle {
namespace {

constexpr double kRootMergeTolerance = 1e-6;  // a double root splits by ~sqrt(eps)

bool is_unit_root(Complex z) { return z == 1.0; }

bool is_real_in_unit_interval(Complex z) {
  return std::abs(z.imag()) <= 1e-14 * std::abs(z) && z.real() > 0.0 && z.real() < 1.0;
}

bool is_nonnegative_integer(Complex mu) {
  const double r = std::round(mu.real());
  return r >= 0.0 && std::abs(mu - Complex(r, 0.0)) <= 1e-12 * std::max(1.0, r);
}

// log(1 - e^{-t} / z) without cancellation for z = 1 and small real t.
Complex log_factor(Complex z, Complex t) {
  if (is_unit_root(z) && t.imag() == 0.0) return std::log(Complex(-std::expm1(-t.real()), 0.0));
  return std::log(1.0 - std::exp(-t) / z);
}

}  // namespace

Complex ClosedFormPsi::eval(Complex t) const {
  Complex log_psi = exponent_lambda * t + exp_coefficient * std::exp(-t);
  for (const auto& f : factors) log_psi += f.power * log_factor(f.root, t);
  return normalization * std::exp(log_psi);
}

Complex ClosedFormPsi::log_derivative(Complex t) const {
  const Complex u = std::exp(-t);
  Complex out = exponent_lambda - exp_coefficient * u;
  for (const auto& f : factors) out += f.power * (u / f.root) / (1.0 - u / f.root);
  return out;
}

ClosedFormPsi solve_first_order_ode(std::span<const Complex> a0, std::span<const Complex> a1) {
  Polynomial p0 = trimmed(a0);
  Polynomial p1 = trimmed(a1);
  if (is_zero(p1)) throw ParameterError("A1 vanishes identically; the equation is not first order");
  ClosedFormPsi psi;
  if (is_zero(p0)) return psi;

  double scale = 0.0;
  for (Complex c : p1) scale = std::max(scale, std::abs(c));
  while (std::abs(p1.front()) <= 1e-14 * scale) {
    if (std::abs(p0.front()) != 0.0)
      throw RepeatedRootError("A1 vanishes at u = 0 but A0 does not; the pole at u = 0 is not simple");
    p0.erase(p0.begin());
    p1.erase(p1.begin());
  }
  const std::size_t d0 = degree(p0);
  const std::size_t d1 = degree(p1);
  if (d0 > d1 + 1)
    throw DegreeError("deg A0 exceeds deg A1 + 1", "deg A0=" + std::to_string(d0) + " deg A1=" + std::to_string(d1));

  const std::vector<Complex> roots = d1 > 0 ? polynomial_roots(p1) : std::vector<Complex>{};
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= kRootMergeTolerance * std::max(1.0, std::abs(roots[i])))
        throw RepeatedRootError("A1 has a repeated root", format_coefficient(roots[i]));

  psi.exponent_lambda = -p0.front() / p1.front();
  const Polynomial dp1 = derivative(p1);
  for (Complex z : roots) psi.factors.push_back({z, evaluate(p0, z) / (z * evaluate(dp1, z))});
  if (d0 == d1 + 1) psi.exp_coefficient = p0.back() / p1.back();
  return psi;
}

LaplaceResult laplace_transform_detailed(const ClosedFormPsi& psi, Complex x, double t_max, double tol) {
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const double rate = x.real() - psi.exponent_lambda.real();
  if (!(rate > 0.0))
    throw DivergenceError("Laplace integral diverges: need Re x > Re lambda",
                          "Re x=" + std::to_string(x.real()) + " Re lambda=" + std::to_string(psi.exponent_lambda.real()));
  std::optional<double> endpoint_power;
  for (const auto& f : psi.factors) {
    if (is_unit_root(f.root)) {
      if (!(f.power.real() > -1.0))
        throw DivergenceError("psi is not integrable at t = 0", "mu=" + format_coefficient(f.power));
      if (f.power.real() < 0.0)
        endpoint_power = std::min(endpoint_power.value_or(0.0), f.power.real());
    } else if (is_real_in_unit_interval(f.root) && !is_nonnegative_integer(f.power)) {
      throw DivergenceError("psi is singular inside the integration range",
                            "t=" + std::to_string(-std::log(f.root.real())));
    }
  }

  const auto integrand = [&](double t) { return std::exp(-x * t) * psi.eval(t); };
  const auto tail_bound = [&](double t) { return 2.0 * std::abs(integrand(t)) / rate; };
  double height = 1.0;
  while (tail_bound(height) > 0.1 * tol) {
    height *= 1.25;
    if (height > 1e7) throw QuadratureError("no truncation point meets the tolerance");
  }
  if (t_max > 0.0 && height > t_max)
    throw QuadratureError("tail bound exceeds the tolerance at t_max",
                          "needed T=" + std::to_string(height) + " t_max=" + std::to_string(t_max));

  QuadratureOptions q;
  q.abs_tol = 0.1 * tol;
  q.rel_tol = 1e-15;
  LaplaceResult out;
  out.truncation = height;
  double start = 0.0;
  if (endpoint_power) {
    // t = v^{1/g} on [0, 1] removes the t^mu endpoint singularity.
    const double g = 1.0 + *endpoint_power;
    const auto near_zero = [&](double v) {
      const double t = std::pow(v, 1.0 / g);
      return integrand(t) * (t / (g * v));
    };
    const double edge = std::min(1.0, height);
    const QuadratureResult r = gauss_kronrod(near_zero, 0.0, std::pow(edge, g), q);
    if (!r.converged) throw QuadratureError("Laplace quadrature near t = 0 did not converge");
    out.value += r.value;
    out.error += r.error;
    start = edge;
  }
  if (height > start) {
    q.initial_panels = static_cast<std::size_t>(std::ceil(height - start));
    const QuadratureResult r = gauss_kronrod(integrand, start, height, q);
    if (!r.converged)
      throw QuadratureError("Laplace quadrature did not converge", "err=" + std::to_string(r.error));
    out.value += r.value;
    out.error += r.error;
  }
  out.error += tail_bound(height);
  if (out.error > tol) throw QuadratureError("Laplace quadrature error exceeds tolerance", std::to_string(out.error));
  return out;
}

Complex laplace_transform(const ClosedFormPsi& psi, Complex x, double t_max, double tol) {
  return laplace_transform_detailed(psi, x, t_max, tol).value;
}

double fde_numeric_residual(const CoefficientMatrix& a, const Evaluator& f, Complex x) {
  Complex sum = 0.0;
  double largest = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Complex xk = x + static_cast<double>(k);
    Complex coef = 0.0;
    Complex power = 1.0;
    for (std::size_t h = 0; h < a.rows(); ++h) {
      coef += a(h, k) * power;
      power *= xk;
    }
    if (coef == 0.0) continue;
    const Complex term = coef * f(xk);
    sum += term;
    largest = std::max(largest, std::abs(term));
  }
  return largest == 0.0 ? 0.0 : std::abs(sum) / largest;
}

PochhammerReport pochhammer_pipeline(const CoefficientMatrix& a, std::span<const Complex> xs, double tol) {
  if (a.rows() != 2)
    throw OrderError("the Laplace pipeline needs a first-order ODE (two rows)", std::to_string(a.rows()));
  if (xs.empty()) throw ParameterError("no evaluation points");
  PochhammerReport report;
  report.psi = solve_first_order_ode(a.row(0), a.row(1));
  const Evaluator f = [&](Complex y) { return laplace_transform(report.psi, y, 0.0, tol); };
  for (Complex x : xs) {
    const LaplaceResult r = laplace_transform_detailed(report.psi, x, 0.0, tol);
    PochhammerPoint point{x, r.value, r.error, fde_numeric_residual(a, f, x)};
    report.max_residual = std::max(report.max_residual, point.residual);
    report.points.push_back(point);
  }

  const Polynomial singular = trimmed(ode_singular_polynomial(a));
  if (degree(singular) > 0) {
    const std::vector<Complex> roots = polynomial_roots(singular);
    for (const auto& factor : report.psi.factors) {
      double best = std::numeric_limits<double>::infinity();
      for (Complex r : roots) best = std::min(best, std::abs(factor.root - r) / std::abs(r));
      report.singular_point_mismatch = std::max(report.singular_point_mismatch, best);
    }
  }

  if (a.cols() == 2) {
    try {
      const FirstOrderFDE fde = FirstOrderFDE::from_matrix(a);
      const RootData roots = coefficient_roots(fde);
      const MellinKernel kernel = gamma_quotient(roots, 0, fde.p());
      const Complex x0 = xs.front();
      Complex first = 0.0;
      double spread = 0.0;
      for (int i = 0; i < 3; ++i) {
        const Complex xi = x0 + static_cast<double>(i);
        const Complex ratio = f(xi) / std::exp(kernel_log_eval(kernel, xi));
        if (i == 0)
          first = ratio;
        else
          spread = std::max(spread, std::abs(ratio / first - 1.0));
      }
      report.gamma_quotient_ratio_spread = spread;
    } catch (const Error&) {
      report.gamma_quotient_ratio_spread.reset();
    }
  }
  return report;
}

}  // namespace pincherle
