#include "pincherle/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "json.hpp"
#include "pincherle/duality.hpp"
#include "pincherle/errors.hpp"
#include "pincherle/fde_solutions.hpp"
#include "pincherle/laplace_branch.hpp"
#include "pincherle/quadrature.hpp"
#include "pincherle/wide.hpp"

namespace pincherle {
namespace {

using Rng = std::mt19937_64;

class Check {
 public:
  Check(std::string name, double threshold) { c_.name = std::move(name), c_.threshold = threshold; }
  void add(double residual) {
    ++c_.samples;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    c_.max_residual = std::max(c_.max_residual, residual);
  }
  // Counts a failed sample (an exception where a value was expected).
  void fail() { add(std::numeric_limits<double>::infinity()); }
  VerifyCheck done() {
    c_.passed = c_.samples > 0 && c_.max_residual <= c_.threshold;
    return c_;
  }

 private:
  VerifyCheck c_;
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}
Complex in_box(Rng& rng, double half) { return {uniform(rng, -half, half), uniform(rng, -half, half)}; }

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// ---- gamma -----------------------------------------------------------------

void gamma_suite(Rng& rng, std::vector<VerifyCheck>& out) {
  Check recurrence("log_gamma recurrence log G(z+1) = log G(z) + log z", 1e-13);
  Check wide("log_gamma vs independent quad-precision Stirling", 1e-13);
  for (int i = 0; i < 500; ++i) {
    const Complex z = in_box(rng, 10.0);
    if (detect_pole(z, 1e-3).is_pole) continue;
    const Complex lg1 = log_gamma(z + 1.0);
    recurrence.add(std::abs(lg1 - log_gamma(z) - std::log(z)) / std::max(1.0, std::abs(lg1)));
    const Complex lg = log_gamma(z);
    wide.add(std::abs(lg - narrow(log_gamma_wide(widen(z)))) / std::max(1.0, std::abs(lg)));
  }
  out.push_back(recurrence.done());
  out.push_back(wide.done());

  Check half("log_gamma(1/2) vs quadrature of t^{-1/2} e^{-t}", 1e-13);
  QuadratureOptions q;
  q.rel_tol = 1e-15;
  const auto r = gauss_kronrod([](double u) { return Complex(2.0 * std::exp(-u * u), 0.0); }, 0.0, 12.0, q);
  half.add(std::abs(log_gamma(0.5) - std::log(r.value)));
  out.push_back(half.done());

  Check asym("asymptotic log|Gamma| error at eta = 50", 0.02);
  for (double a : {0.5, 1.0, 2.0}) asym.add(std::abs(asymptotic_log_abs_gamma(a, 50.0) - log_gamma({a, 50.0}).real()));
  out.push_back(asym.done());

  Check poch("pochhammer vs gamma ratio", 1e-11);
  for (int i = 0; i < 200; ++i) {
    const Complex alpha = Complex(uniform(rng, 0.2, 6.0), uniform(rng, -3.0, 3.0));
    const auto n = static_cast<std::uint64_t>(pick(rng, 0, 20));
    poch.add(rel(pochhammer(alpha, n), std::exp(log_gamma(alpha + static_cast<double>(n)) - log_gamma(alpha))));
  }
  out.push_back(poch.done());
}

// ---- duality ---------------------------------------------------------------

CoefficientMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::vector<Complex> e(rows * cols);
  for (auto& c : e) {
    const std::size_t kind = pick(rng, 0, 3);
    if (kind == 0) c = 0.0;
    else if (kind == 1) c = std::round(uniform(rng, -5.0, 5.0));
    else c = in_box(rng, 3.0);
  }
  e[rows * cols - 1] = Complex(uniform(rng, 0.5, 2.0), 0.0);  // last row and column nonzero
  return {rows, cols, std::move(e)};
}

void duality_suite(Rng& rng, std::vector<VerifyCheck>& out) {
  Check ode("matrix -> ODE -> matrix is exact", 0.0);
  Check fde("matrix -> FDE -> matrix is exact", 0.0);
  Check json("matrix JSON round trip is exact", 0.0);
  Check swap("orders swap (m, p) <-> (p, m)", 0.0);
  for (int i = 0; i < 500; ++i) {
    const CoefficientMatrix a = random_matrix(rng, pick(rng, 1, 6), pick(rng, 1, 6));
    ode.add(as_ode(a).to_matrix() == a ? 0.0 : 1.0);
    fde.add(as_fde(a).to_matrix() == a ? 0.0 : 1.0);
    json.add(matrix_from_json(matrix_to_json(a)) == a ? 0.0 : 1.0);
    const Orders o = orders(a);
    const bool ok = o.ode_order == a.rows() - 1 && o.ode_exp_degree == a.cols() - 1 && o.fde_order == o.ode_exp_degree &&
                    o.fde_poly_degree == o.ode_order;
    swap.add(ok ? 0.0 : 1.0);
  }
  out.push_back(ode.done());
  out.push_back(fde.done());
  out.push_back(json.done());
  out.push_back(swap.done());
}

// ---- fde -------------------------------------------------------------------

struct RandomFde {
  std::vector<Complex> rho, sigma;
  Complex lead_p, lead_q;
  FirstOrderFDE fde;
};

RandomFde random_fde(Rng& rng, std::size_t max_degree) {
  std::vector<Complex> rho(pick(rng, 0, max_degree));
  std::vector<Complex> sigma(pick(rng, 0, max_degree));
  for (auto& r : rho) r = in_box(rng, 3.0);
  for (auto& s : sigma) s = in_box(rng, 3.0);
  const Complex lp(uniform(rng, 0.5, 2.0) * (pick(rng, 0, 1) ? 1.0 : -1.0), uniform(rng, -1.0, 1.0));
  const Complex lq(uniform(rng, 0.5, 2.0) * (pick(rng, 0, 1) ? 1.0 : -1.0), uniform(rng, -1.0, 1.0));
  const Polynomial p = from_roots(rho, lp);
  const Polynomial q = from_roots(sigma, lq);
  return {rho, sigma, lp, lq, FirstOrderFDE::from_polynomials(p, q)};
}

void fde_suite(Rng& rng, std::vector<VerifyCheck>& out) {
  Check ratio("gamma-quotient ratio residual, 1000 instances, p, q <= 4", 1e-11);
  Check recon("root reconstruction of P and Q", 1e-10);
  Check forms("forms agree up to a 1-periodic factor (x, x+1, x+2)", 1e-10);
  Check special("(m, n) = (0, p) reproduces the direct form exactly", 0.0);
  for (int i = 0; i < 1000; ++i) {
    const RandomFde r = random_fde(rng, 4);
    const RootData roots = coefficient_roots(r.fde);
    for (const auto& [poly, rts, lead] : {std::tuple{r.fde.p_poly(), roots.rho, roots.lead_p},
                                          std::tuple{r.fde.q_poly(), roots.sigma, roots.lead_q}}) {
      const Polynomial back = from_roots(rts, lead);
      double scale = 0.0;
      for (Complex c : poly) scale = std::max(scale, std::abs(c));
      double worst = 0.0;
      for (std::size_t k = 0; k < poly.size(); ++k) worst = std::max(worst, std::abs(back[k] - poly[k]) / scale);
      recon.add(worst);
    }
    const std::size_t m = pick(rng, 0, roots.sigma.size());
    const std::size_t n = pick(rng, 0, roots.rho.size());
    const Complex x = in_box(rng, 3.0);
    try {
      ratio.add(fde_ratio_residual(gamma_quotient(roots, m, n), roots, x));
    } catch (const PoleError&) {
    }
    if (i < 100) {
      const MellinKernel direct = gamma_quotient(roots, 0, roots.rho.size());
      const MellinKernel mixed = gamma_quotient(roots, m, n);
      try {
        Complex first = 0.0;
        for (int k = 0; k < 3; ++k) {
          const Complex xk = x + static_cast<double>(k);
          const Complex rk = std::exp(kernel_log_eval(direct, xk) - kernel_log_eval(mixed, xk));
          if (k == 0) first = rk;
          else forms.add(rel(rk, first));
        }
      } catch (const PoleError&) {
      }
      const RootData direct_roots = coefficient_roots(r.fde, SolutionForm::Direct);
      const MellinKernel again = gamma_quotient(direct_roots, 0, roots.rho.size());
      special.add(again == direct && again.base == direct_roots.c ? 0.0 : 1.0);
    }
  }
  out.push_back(ratio.done());
  out.push_back(recon.done());
  out.push_back(forms.done());
  out.push_back(special.done());
}

// ---- laplace ---------------------------------------------------------------

void laplace_suite(Rng&, std::vector<VerifyCheck>& out) {
  Check beta("Laplace transform of (1 - e^{-t})^{b-1} vs Beta function", 1e-6);
  Check residual("difference-equation residual of the transform", 1e-6);
  Check ratio("transform / gamma quotient is 1-periodic", 1e-6);
  Check shift("shift identity F(x+1) = transform of e^{-t} psi at x", 1e-9);
  for (double b : {2.0, 3.5}) {
    const CoefficientMatrix a = CoefficientMatrix::from_rows({{0.0, -(b - 1.0)}, {1.0, -1.0}});
    const std::vector<Complex> xs = {1.5, 2.5};
    const PochhammerReport rep = pochhammer_pipeline(a, xs, 1e-11);
    for (const auto& pt : rep.points) {
      const double x = pt.x.real();
      beta.add(rel(pt.f, std::exp(std::lgamma(x) + std::lgamma(b) - std::lgamma(x + b))));
      residual.add(pt.residual);
    }
    ratio.add(rep.gamma_quotient_ratio_spread.value_or(std::numeric_limits<double>::infinity()));
    ClosedFormPsi damped = rep.psi;
    damped.exponent_lambda -= 1.0;
    shift.add(rel(laplace_transform(rep.psi, 2.5, 0.0, 1e-12), laplace_transform(damped, 1.5, 0.0, 1e-12)));
  }
  out.push_back(beta.done());
  out.push_back(residual.done());
  out.push_back(ratio.done());
  out.push_back(shift.done());
}

// ---- mb --------------------------------------------------------------------

void mb_suite(Rng&, std::vector<VerifyCheck>& out) {
  Check oracle("|quadrature - residues| / (10 * sum of error estimates)", 1.0);
  Check anchors("anchor change / combined error estimate", 1.0);
  Check doubling("truncation doubling / combined error estimate", 1.0);
  Check conj("imaginary part for real parameters and z > 0", 1e-12);
  for (const auto& entry : g_test_bank()) {
    try {
      const MellinKernel k = kernel_of(entry.params);
      const Contour c = choose_contour(k);
      const EvalResult quad = integrate(k, entry.z, c, 1e-12);
      const EvalResult res =
          residue_series(k, entry.z, preferred_residue_side(k, entry.z), 5000, 1e-15);
      oracle.add(std::abs(quad.value - res.value) / (10.0 * (quad.err_estimate + res.err_estimate)));

      Contour moved = c;
      moved.anchor = alternate_anchor(k);
      const EvalResult alt = integrate(k, entry.z, moved, 1e-12);
      anchors.add(std::abs(alt.value - quad.value) / (alt.err_estimate + quad.err_estimate));

      Contour taller = quad.contour;
      taller.truncation *= 2.0;
      const EvalResult tall = integrate(k, entry.z, taller, 1e-12);
      doubling.add(std::abs(tall.value - quad.value) / (tall.err_estimate + quad.err_estimate));

      bool real = entry.z.imag() == 0.0 && entry.z.real() > 0.0;
      for (Complex a : entry.params.a) real = real && a.imag() == 0.0;
      for (Complex b : entry.params.b) real = real && b.imag() == 0.0;
      if (real) conj.add(std::abs(quad.value.imag()));
    } catch (const Error&) {
      oracle.fail();
    }
  }
  out.push_back(oracle.done());
  out.push_back(anchors.done());
  out.push_back(doubling.done());
  out.push_back(conj.done());
}

// ---- special ---------------------------------------------------------------

void special_suite(Rng& rng, std::vector<VerifyCheck>& out) {
  Check bridge("pFq via G vs series (p = 2, q = 1)", 1e-8);
  const std::vector<double> values = {0.3, 1.2, 2.5};
  for (double a1 : values)
    for (double a2 : values)
      for (double b1 : values)
        for (Complex z : {Complex(-0.5, 0.0), Complex(-0.25, 0.0), Complex(0.0, 0.25)}) {
          const std::vector<Complex> a = {a1, a2};
          const std::vector<Complex> b = {b1};
          try {
            bridge.add(rel(pfq_via_g(a, b, z, 1e-12).value, pfq(a, b, z)));
          } catch (const Error&) {
            bridge.fail();
          }
        }
  out.push_back(bridge.done());

  Check reduction("Fox H with unit multipliers vs Meijer G", 1e-9);
  Check pointwise("H and G kernels agree pointwise", 1e-12);
  for (const auto& entry : g_test_bank()) {
    HParams h{entry.params, std::vector<double>(entry.params.p, 1.0), std::vector<double>(entry.params.q, 1.0)};
    try {
      reduction.add(rel(fox_h(h, entry.z, 1e-12).value, meijer_g(entry.params, entry.z, 1e-12).value));
      const MellinKernel kg = kernel_of(entry.params);
      const MellinKernel kh = kernel_of(h);
      const double anchor = choose_contour(kg).anchor;
      for (double t : {-3.0, -0.7, 0.0, 1.3, 4.0}) {
        const Complex s(anchor, t);
        pointwise.add(std::abs(kernel_log_eval(kh, s) - kernel_log_eval(kg, s)) /
                      std::max(1.0, std::abs(kernel_log_eval(kg, s))));
      }
    } catch (const Error&) {
      reduction.fail();
    }
  }
  out.push_back(reduction.done());
  out.push_back(pointwise.done());

  Check recurrence("series coefficient ratio c_{n+1}/c_n", 1e-14);
  for (int i = 0; i < 300; ++i) {
    std::vector<Complex> a(pick(rng, 0, 3));
    std::vector<Complex> b(pick(rng, 0, 3));
    for (auto& x : a) x = Complex(uniform(rng, 0.1, 4.0), uniform(rng, -2.0, 2.0));
    for (auto& x : b) x = Complex(uniform(rng, 0.1, 4.0), uniform(rng, -2.0, 2.0));
    recurrence.add(series_recurrence_residual(a, b, pick(rng, 0, 50)));
  }
  out.push_back(recurrence.done());

  Check ode("G differential-equation residual (Richardson differences)", 1e-4);
  ode.add(g_ode_residual(GParams{1, 0, 0, 1, {}, {0.0}}, 1.0, 1e-2));
  ode.add(g_ode_residual(GParams{1, 2, 2, 2, {0.0, 0.0}, {0.0, -1.0}}, 0.25, 1e-2));
  out.push_back(ode.done());

  Check structural("difference-equation chain gives the G operator exactly", 0.0);
  for (int i = 0; i < 100; ++i) {
    const RandomFde r = random_fde(rng, 3);
    const std::size_t m = pick(rng, 0, r.fde.q());
    const std::size_t n = pick(rng, 0, r.fde.p());
    const ThetaOperatorForm derived = derive_g_ode(r.fde, m, n);
    const RootData roots = coefficient_roots(r.fde);
    GParams g{m, n, roots.rho.size(), roots.sigma.size(), {}, {}};
    for (Complex rho : roots.rho) g.a.push_back(1.0 + rho);
    for (Complex sigma : roots.sigma) g.b.push_back(1.0 + sigma);
    try {
      structural.add(theta_operator(g) == derived ? 0.0 : 1.0);
    } catch (const ParameterError&) {
      // separation can fail for random roots; the chain itself is unaffected
    }
  }
  out.push_back(structural.done());

  Check classes("series convergence regions", 0.0);
  for (std::size_t p = 0; p <= 5; ++p)
    for (std::size_t q = 0; q <= 5; ++q)
      for (double r : {0.5, 1.0 - 1e-9, 1.0 + 1e-9, 2.0}) {
        const bool want = p <= q || (p == q + 1 && r < 1.0);
        classes.add(series_converges(p, q, r) == want ? 0.0 : 1.0);
      }
  out.push_back(classes.done());
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["samples"] = c.samples;
    e["max_residual"] = std::isfinite(c.max_residual) ? nlohmann::json(c.max_residual) : nlohmann::json("inf");
    e["threshold"] = c.threshold;
    j["checks"].push_back(e);
  }
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gamma", "duality", "fde", "laplace", "mb", "special", "all"};
  return names;
}

VerifyReport run_suite(const std::string& suite, std::uint64_t seed) {
  using Runner = std::function<void(Rng&, std::vector<VerifyCheck>&)>;
  const std::vector<std::pair<std::string, Runner>> runners = {
      {"gamma", gamma_suite}, {"duality", duality_suite}, {"fde", fde_suite},
      {"laplace", laplace_suite}, {"mb", mb_suite}, {"special", special_suite}};
  VerifyReport report{suite, seed, {}};
  bool found = false;
  for (const auto& [name, run] : runners) {
    if (suite != "all" && suite != name) continue;
    found = true;
    Rng rng(seed);
    run(rng, report.checks);
  }
  if (!found) throw ParameterError("unknown verification suite", suite);
  return report;
}

const std::vector<BankEntry>& g_test_bank() {
  static const std::vector<BankEntry> bank = [] {
    std::vector<BankEntry> b;
    const auto add = [&](std::string name, std::size_t m, std::size_t n, std::vector<Complex> a,
                         std::vector<Complex> bs, Complex z) {
      GParams g{m, n, a.size(), bs.size(), std::move(a), std::move(bs)};
      b.push_back({std::move(name), std::move(g), z});
    };
    add("G10_01 b=0", 1, 0, {}, {0.0}, 1.0);
    add("G10_01 b=0.5", 1, 0, {}, {0.5}, 2.0);
    add("G10_01 b=2", 1, 0, {}, {2.0}, 0.3);
    add("G10_01 b=0.5 z=1+i", 1, 0, {}, {0.5}, {1.0, 1.0});
    add("G10_01 complex b", 1, 0, {}, {{0.5, 0.5}}, 1.5);
    add("G20_02 b=0,0.5", 2, 0, {}, {0.0, 0.5}, 1.0);
    add("G20_02 b=0.25,0.75", 2, 0, {}, {0.25, 0.75}, 3.0);
    add("G20_02 z=2i", 2, 0, {}, {0.0, 0.5}, {0.0, 2.0});
    add("G11_11 z=0.5", 1, 1, {0.5}, {0.0}, 0.5);
    add("G11_11 z=2", 1, 1, {0.5}, {0.0}, 2.0);
    add("G11_11 arg 2", 1, 1, {0.5}, {0.0}, std::polar(0.5, 2.0));
    add("G11_12", 1, 1, {0.3}, {0.0, -0.4}, 1.5);
    add("G12_22 log", 1, 2, {0.0, 0.0}, {0.0, -1.0}, 0.25);
    add("G12_22 z=3", 1, 2, {0.2, 0.5}, {0.0, -0.3}, 3.0);
    add("G21_12", 2, 1, {0.4}, {0.0, 0.5}, 1.2);
    add("G21_12 complex", 2, 1, {{0.4, 0.2}}, {0.0, 0.5}, {0.9, -0.4});
    add("G22_22", 2, 2, {0.3, 0.6}, {0.0, 0.45}, 0.7);
    add("G22_23", 2, 2, {0.3, 0.6}, {0.0, 0.45, -0.2}, 1.7);
    add("G22_23 z<0", 2, 2, {0.3, 0.6}, {0.0, 0.45, -0.2}, -1.3);
    add("G12_23", 1, 2, {0.2, 0.7}, {0.0, 0.5, -0.35}, 0.8);
    add("G21_23", 2, 1, {0.25, 0.6}, {0.1, 0.55, -0.3}, 2.5);
    return b;
  }();
  return bank;
}

double alternate_anchor(const MellinKernel& kernel) {
  double left = -std::numeric_limits<double>::infinity();
  double right = std::numeric_limits<double>::infinity();
  for (const auto& f : kernel.up_right) left = std::max(left, (f.param.real() - 1.0) / f.mult);
  for (const auto& f : kernel.up_left) right = std::min(right, f.param.real() / f.mult);
  if (!(right > left)) throw ContourError("no vertical line separates the pole families");
  if (std::isinf(left) && std::isinf(right)) return 0.7;
  if (std::isinf(left)) return right - 1.25;
  if (std::isinf(right)) return left + 1.25;
  return left + 0.3 * (right - left);
}

}  // namespace pincherle
