#include "pincherle/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "pincherle/errors.hpp"

namespace pincherle {
namespace {

constexpr std::size_t kMaxSeriesTerms = 1000000;
constexpr double kIntegerTolerance = 1e-12;

// -n when c is (numerically) the non-positive integer -n.
std::optional<std::size_t> nonpositive_integer(Complex c) {
  const double r = std::round(c.real());
  if (r > 0.0 || std::abs(c - Complex(r, 0.0)) > kIntegerTolerance * std::max(1.0, std::abs(r))) return std::nullopt;
  return static_cast<std::size_t>(-r);
}

std::optional<std::size_t> positive_integer(Complex c) {
  const double r = std::round(c.real());
  if (r < 1.0 || std::abs(c - Complex(r, 0.0)) > kIntegerTolerance * std::max(1.0, std::abs(r))) return std::nullopt;
  return static_cast<std::size_t>(r);
}

std::string complex_text(Complex c) { return format_coefficient(c); }

Polynomial theta_polynomial(const std::vector<Complex>& shifts) {
  Polynomial poly = {1.0};
  for (Complex s : shifts) poly = multiply(poly, Polynomial{-s, 1.0});
  return poly;
}

// Fornberg's weights for derivatives 0..order at 0 on the given nodes;
// w[k][i] multiplies f(nodes[i]) in the k-th derivative.
std::vector<std::vector<double>> fd_weights(const std::vector<double>& nodes, std::size_t order) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> c(order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> multipliers_or_units(const std::vector<GammaFactor>& factors) {
  std::vector<double> out;
  for (const auto& f : factors) out.push_back(f.mult);
  return out;
}

EvalResult residues_with_fallback(const MellinKernel& kernel, Complex z, double tol, const MeijerOptions& options,
                                  std::string* notes) {
  const Side first = preferred_residue_side(kernel, z);
  const Side second = first == Side::Right ? Side::Left : Side::Right;
  std::exception_ptr failure;
  for (const Side side : {first, second}) {
    const bool empty = side == Side::Right ? kernel.up_left.empty() : kernel.up_right.empty();
    if (empty) continue;
    try {
      return residue_series(kernel, z, side, options.n_max, tol, options.integrate);
    } catch (const Error& e) {
      if (notes) *notes += std::string(" residues_") + (side == Side::Right ? "right" : "left") + " failed: " + e.what();
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  throw NonConvergentSeriesError("kernel has no poles on either side");
}

}  // namespace

PfqClass classify_pfq(std::size_t p, std::size_t q, Complex /*z*/) {
  if (p <= q) return PfqClass::ConvergesEverywhere;
  if (p == q + 1) return PfqClass::ConvergesUnitDisk;
  return PfqClass::DivergesNonzero;
}

bool series_converges(std::size_t p, std::size_t q, Complex z) {
  switch (classify_pfq(p, q)) {
    case PfqClass::ConvergesEverywhere:
      return true;
    case PfqClass::ConvergesUnitDisk:
      return std::abs(z) < 1.0;
    case PfqClass::DivergesNonzero:
      return z == 0.0;
  }
  return false;
}

Complex pfq(std::span<const Complex> a, std::span<const Complex> b, Complex z, double tol) {
  // Termination is decided before the denominators are checked.
  std::optional<std::size_t> terminate_at;
  for (Complex aj : a)
    if (const auto n = nonpositive_integer(aj)) terminate_at = std::min(terminate_at.value_or(*n), *n);
  for (Complex bk : b) {
    if (const auto n = nonpositive_integer(bk); n && (!terminate_at || *terminate_at > *n))
      throw InvalidDenominatorError("denominator parameter is a non-positive integer", complex_text(bk));
  }
  if (z == 0.0) return 1.0;
  if (!terminate_at && !series_converges(a.size(), b.size(), z))
    throw DivergentSeriesError("pFq series diverges at this z",
                               "p=" + std::to_string(a.size()) + " q=" + std::to_string(b.size()) +
                                   " |z|=" + std::to_string(std::abs(z)));

  Complex term = 1.0;
  Complex sum = 1.0;
  int small = 0;
  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    if (terminate_at && n == *terminate_at) return sum;
    Complex ratio = z / static_cast<double>(n + 1);
    for (Complex aj : a) ratio *= aj + static_cast<double>(n);
    for (Complex bk : b) ratio /= bk + static_cast<double>(n);
    term *= ratio;
    sum += term;
    if (!terminate_at) {
      small = std::abs(term) < tol * std::abs(sum) ? small + 1 : 0;
      if (small >= 3) return sum;
    }
  }
  throw DivergentSeriesError("pFq series did not settle within the term limit", std::to_string(kMaxSeriesTerms));
}

double series_recurrence_residual(std::span<const Complex> a, std::span<const Complex> b, std::size_t n) {
  // c_{n+1}/c_n one Pochhammer factor at a time; the full coefficients
  // leave double range by n = 50 with four parameters.
  Complex ratio = 1.0;
  bool terminated = false;
  const auto step = [&](Complex alpha) {
    const Complex pn = pochhammer(alpha, n);
    if (pn == 0.0) terminated = true;
    return pn == 0.0 ? Complex(0.0) : pochhammer(alpha, n + 1) / pn;
  };
  for (Complex aj : a) ratio *= step(aj);
  for (Complex bk : b) ratio /= step(bk);
  ratio /= step(1.0);
  if (terminated) return 0.0;  // c_n = c_{n+1} = 0
  Complex expected = 1.0 / static_cast<double>(n + 1);
  for (Complex aj : a) expected *= aj + static_cast<double>(n);
  for (Complex bk : b) expected /= bk + static_cast<double>(n);
  if (expected == 0.0) return std::abs(ratio);
  return std::abs(ratio - expected) / std::abs(expected);
}

void validate(const GParams& g) {
  if (g.a.size() != g.p || g.b.size() != g.q)
    throw ParameterError("parameter counts must match p and q",
                         "p=" + std::to_string(g.p) + " |a|=" + std::to_string(g.a.size()) + " q=" +
                             std::to_string(g.q) + " |b|=" + std::to_string(g.b.size()));
  if (g.m > g.q || g.n > g.p)
    throw ParameterError("orders must satisfy 0 <= m <= q and 0 <= n <= p",
                         "m=" + std::to_string(g.m) + " n=" + std::to_string(g.n));
  for (Complex c : g.a)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ParameterError("parameter a is not finite");
  for (Complex c : g.b)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ParameterError("parameter b is not finite");
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = 0; k < g.m; ++k)
      if (positive_integer(g.a[j] - g.b[k]))
        throw ParameterError("poles of Gamma(b_k - s) and Gamma(1 - a_j + s) coincide (a_j - b_k is a positive integer)",
                             "a=" + complex_text(g.a[j]) + " b=" + complex_text(g.b[k]));
}

void validate(const HParams& h) {
  if (h.g.a.size() != h.g.p || h.g.b.size() != h.g.q)
    throw ParameterError("parameter counts must match p and q");
  if (h.alpha.size() != h.g.p || h.beta.size() != h.g.q)
    throw ParameterError("multiplier counts must match p and q");
  if (h.g.m > h.g.q || h.g.n > h.g.p) throw ParameterError("orders must satisfy 0 <= m <= q and 0 <= n <= p");
  for (double x : h.alpha)
    if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("multipliers must be positive", std::to_string(x));
  for (double x : h.beta)
    if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("multipliers must be positive", std::to_string(x));
  // (b_k + l') / beta_k = (a_j - 1 - l) / alpha_j has a solution in
  // non-negative integers exactly when choose_contour finds a shared pole.
  try {
    choose_contour(kernel_of(h));
  } catch (const ContourError& e) {
    throw ParameterError(std::string("pole families overlap: ") + e.what(), e.context());
  }
}

MellinKernel kernel_of(const GParams& params) {
  validate(params);
  return g_kernel(params.m, params.n, params.a, params.b);
}

MellinKernel kernel_of(const HParams& params) {
  if (params.alpha.size() != params.g.a.size() || params.beta.size() != params.g.b.size())
    throw ParameterError("multiplier counts must match p and q");
  if (params.g.m > params.g.b.size() || params.g.n > params.g.a.size())
    throw ParameterError("orders must satisfy 0 <= m <= q and 0 <= n <= p");
  return h_kernel(params.g.m, params.g.n, params.g.a, params.alpha, params.g.b, params.beta);
}

Side preferred_residue_side(const MellinKernel& kernel, Complex z) {
  std::vector<double> alpha = multipliers_or_units(kernel.up_right);
  for (double x : multipliers_or_units(kernel.down_right)) alpha.push_back(x);
  std::vector<double> beta = multipliers_or_units(kernel.up_left);
  for (double x : multipliers_or_units(kernel.down_left)) beta.push_back(x);
  double delta = 0.0;
  double log_radius = 0.0;
  for (double x : beta) {
    delta += x;
    log_radius += x * std::log(x);
  }
  for (double x : alpha) {
    delta -= x;
    log_radius -= x * std::log(x);
  }
  // base^s rescales z.
  const double log_abs_z = std::log(std::abs(z)) + kernel.log_base.real();
  if (delta > 1e-12) return Side::Right;
  if (delta < -1e-12) return Side::Left;
  return log_abs_z < log_radius ? Side::Right : Side::Left;
}

EvalResult evaluate_kernel(const MellinKernel& kernel, Complex z, double tol, const MeijerOptions& options) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParameterError("z is not finite");
  if (z == 0.0) throw ParameterError("z must be nonzero");
  const Contour contour = options.contour ? *options.contour : choose_contour(kernel);
  switch (options.method) {
    case EvalMethod::Quadrature:
      return integrate(kernel, z, contour, tol, options.integrate);
    case EvalMethod::ResiduesLeft:
      return residue_series(kernel, z, Side::Left, options.n_max, tol, options.integrate);
    case EvalMethod::ResiduesRight:
      return residue_series(kernel, z, Side::Right, options.n_max, tol, options.integrate);
    case EvalMethod::Residues:
      return residue_series(kernel, z, preferred_residue_side(kernel, z), options.n_max, tol, options.integrate);
    case EvalMethod::Auto:
      break;
  }

  MellinKernel probe = kernel;
  if (options.integrate.arg_override) {
    // Classification sees the overridden branch through the phase of z.
    probe.log_base += Complex(0.0, *options.integrate.arg_override - std::arg(z));
  }
  const ConvergenceClass cls = convergence_class(probe, z, contour);
  if (cls == ConvergenceClass::Divergent)
    throw ConvergenceError("Mellin-Barnes integral diverges for this kernel and arg z",
                           "kappa=" + std::to_string(decay_rate(kernel)) + " arg z=" + std::to_string(std::arg(z)));
  std::string notes;
  if (cls == ConvergenceClass::Absolute) {
    try {
      return integrate(kernel, z, contour, tol, options.integrate);
    } catch (const QuadratureError& e) {
      notes = std::string("quadrature failed: ") + e.what() + ";";
      try {
        EvalResult r = residues_with_fallback(kernel, z, tol, options, &notes);
        r.diagnostics += " (" + notes + ")";
        return r;
      } catch (const Error&) {
        throw e;
      }
    }
  }
  notes = "conditionally convergent integral;";
  EvalResult r = residues_with_fallback(kernel, z, tol, options, &notes);
  r.diagnostics += " (" + notes + ")";
  return r;
}

EvalResult meijer_g(const GParams& params, Complex z, double tol, const MeijerOptions& options) {
  return evaluate_kernel(kernel_of(params), z, tol, options);
}

EvalResult fox_h(const HParams& params, Complex z, double tol, const MeijerOptions& options) {
  validate(params);
  return evaluate_kernel(kernel_of(params), z, tol, options);
}

EvalResult pfq_via_g(std::span<const Complex> a, std::span<const Complex> b, Complex z, double tol,
                     const MeijerOptions& options) {
  for (Complex aj : a)
    if (nonpositive_integer(aj))
      throw ParameterError("numerator parameters must avoid 0, -1, -2, ...", complex_text(aj));
  for (Complex bk : b)
    if (nonpositive_integer(bk))
      throw ParameterError("denominator parameters must avoid 0, -1, -2, ...", complex_text(bk));
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw ParameterError("the Mellin-Barnes form needs |arg(-z)| < pi, i.e. z off [0, inf)", complex_text(z));

  GParams g;
  g.m = 1;
  g.n = a.size();
  g.p = a.size();
  g.q = b.size() + 1;
  for (Complex aj : a) g.a.push_back(1.0 - aj);
  g.b.push_back(0.0);
  for (Complex bk : b) g.b.push_back(1.0 - bk);

  Complex log_prefactor = 0.0;
  for (Complex bk : b) log_prefactor += log_gamma(bk);
  for (Complex aj : a) log_prefactor -= log_gamma(aj);
  const Complex prefactor = std::exp(log_prefactor);

  EvalResult r = meijer_g(g, -z, tol, options);
  r.value *= prefactor;
  r.err_estimate *= std::abs(prefactor);
  return r;
}

ThetaOperatorForm theta_operator(const GParams& params) {
  validate(params);
  ThetaOperatorForm op;
  const long long e = static_cast<long long>(params.p) - static_cast<long long>(params.m + params.n);
  op.sign = (e % 2 == 0) ? 1 : -1;
  for (Complex aj : params.a) op.left_factors.push_back(aj - 1.0);
  op.right_factors = params.b;
  return op;
}

ThetaOperatorForm derive_g_ode(const FirstOrderFDE& fde, std::size_t m, std::size_t n) {
  if (m > fde.q() || n > fde.p())
    throw OrderError("need 0 <= m <= q and 0 <= n <= p", "m=" + std::to_string(m) + " n=" + std::to_string(n));
  const RootData roots = coefficient_roots(fde, SolutionForm::Mixed, m, n);
  ThetaOperatorForm op;
  const long long e = static_cast<long long>(fde.p()) - static_cast<long long>(m + n);
  op.sign = (e % 2 == 0) ? 1 : -1;
  // z = c e^t, a_j = 1 + rho_j, b_k = 1 + sigma_k; left factors are theta - a_j + 1.
  for (Complex rho : roots.rho) {
    const Complex a = 1.0 + rho;
    op.left_factors.push_back(a - 1.0);
  }
  for (Complex sigma : roots.sigma) op.right_factors.push_back(1.0 + sigma);
  return op;
}

double g_ode_residual(const ThetaOperatorForm& op, const std::function<Complex(Complex)>& u, Complex z,
                      double step) {
  if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
  if (z == 0.0) throw ParameterError("z must be nonzero");
  const Polynomial left = theta_polynomial(op.left_factors);
  const Polynomial right = theta_polynomial(op.right_factors);
  const std::size_t order = std::max(left.size(), right.size()) - 1;
  const int radius = static_cast<int>(order / 2 + 1);

  // Samples on the fine grid w = k h / 2, k = -2r..2r; the coarse grid reuses
  // every other point.
  std::vector<Complex> samples;
  for (int k = -2 * radius; k <= 2 * radius; ++k) samples.push_back(u(z * std::exp(0.5 * step * k)));
  const auto derivatives = [&](double h, int stride) {
    std::vector<double> nodes;
    for (int k = -radius; k <= radius; ++k) nodes.push_back(h * k);
    const auto w = fd_weights(nodes, order);
    std::vector<Complex> d(order + 1, 0.0);
    for (std::size_t k = 0; k <= order; ++k)
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int offset = (static_cast<int>(i) - radius) * stride;
        d[k] += w[k][i] * samples[static_cast<std::size_t>(2 * radius + offset)];
      }
    return d;
  };
  const std::vector<Complex> coarse = derivatives(step, 2);
  const std::vector<Complex> fine = derivatives(0.5 * step, 1);
  std::vector<Complex> d(order + 1);
  for (std::size_t k = 0; k <= order; ++k) d[k] = (4.0 * fine[k] - coarse[k]) / 3.0;

  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double scale_l = 0.0;
  double scale_r = 0.0;
  for (std::size_t k = 0; k < left.size(); ++k) {
    lhs += left[k] * d[k];
    scale_l += std::abs(left[k] * d[k]);
  }
  for (std::size_t k = 0; k < right.size(); ++k) {
    rhs += right[k] * d[k];
    scale_r += std::abs(right[k] * d[k]);
  }
  const Complex zl = op.z_multiplies_left ? z : 1.0;
  const Complex zr = op.z_multiplies_left ? 1.0 : z;
  const double scale = std::abs(zl) * scale_l + std::abs(zr) * scale_r;
  if (scale == 0.0) return 0.0;
  return std::abs(static_cast<double>(op.sign) * zl * lhs - zr * rhs) / scale;
}

double g_ode_residual(const GParams& params, Complex z, double step) {
  const ThetaOperatorForm op = theta_operator(params);
  const MellinKernel kernel = kernel_of(params);
  return g_ode_residual(op, [&](Complex x) { return evaluate_kernel(kernel, x, 1e-13).value; }, z, step);
}

}  // namespace pincherle
