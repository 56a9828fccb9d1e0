#include "pincherle/mellin_barnes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>

#include "pincherle/errors.hpp"
#include "pincherle/quadrature.hpp"
#include "pincherle/wide.hpp"

#include <boost/math/constants/constants.hpp>

namespace pincherle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kClassTolerance = 1e-12;
constexpr std::size_t kMaxDetours = 1000;
constexpr double kMinClearance = 1e-6;

bool log_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("MB_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
  }();
  return enabled;
}

void mb_log(const std::string& message) {
  if (log_enabled()) std::cerr << "[mb] " << message << '\n';
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::string fmt(Complex v) { return "(" + fmt(v.real()) + "," + fmt(v.imag()) + ")"; }

void check_finite(Complex c, const char* what) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ParameterError(std::string(what) + " is not finite");
}

void check_multiplier(double m, const char* what) {
  if (!std::isfinite(m) || m <= 0.0) throw ParameterError(std::string(what) + " must be a positive real", fmt(m));
}

double arg_of(Complex z, const std::optional<double>& arg_override) {
  return arg_override ? *arg_override : std::arg(z);
}

struct Window {
  double left = -kInf;   // rightmost left-opening pole
  double right = kInf;   // leftmost right-opening pole
};

Window separation_window(const MellinKernel& k) {
  Window w;
  for (const auto& f : k.up_right) w.left = std::max(w.left, (f.param.real() - 1.0) / f.mult);
  for (const auto& f : k.up_left) w.right = std::min(w.right, f.param.real() / f.mult);
  return w;
}

Complex right_pole(const GammaFactor& f, std::size_t l) { return (f.param + static_cast<double>(l)) / f.mult; }
Complex left_pole(const GammaFactor& f, std::size_t l) { return (f.param - 1.0 - static_cast<double>(l)) / f.mult; }

// Right-opening poles with Re <= limit and left-opening poles with Re >= limit.
std::vector<Complex> right_poles_below(const MellinKernel& k, double limit) {
  std::vector<Complex> out;
  for (const auto& f : k.up_left) {
    for (std::size_t l = 0;; ++l) {
      const Complex p = right_pole(f, l);
      if (p.real() > limit) break;
      out.push_back(p);
      if (out.size() > 100 * kMaxDetours) throw ContourError("too many poles on the wrong side of the contour");
    }
  }
  return out;
}

std::vector<Complex> left_poles_above(const MellinKernel& k, double limit) {
  std::vector<Complex> out;
  for (const auto& f : k.up_right) {
    for (std::size_t l = 0;; ++l) {
      const Complex p = left_pole(f, l);
      if (p.real() < limit) break;
      out.push_back(p);
      if (out.size() > 100 * kMaxDetours) throw ContourError("too many poles on the wrong side of the contour");
    }
  }
  return out;
}

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= kPoleTolerance * std::max(1.0, std::abs(a)); }

// Log of |Gamma(offset + slope s)| with the leading-order estimate once the
// imaginary part is large enough; -inf at a pole.
double factor_log_abs(const LinearGamma& g, Complex s) {
  const Complex arg = g.offset + g.slope * s;
  if (std::abs(arg.imag()) >= 1.0) return asymptotic_log_abs_gamma(arg.real(), arg.imag());
  if (detect_pole(arg).is_pole) return -kInf;
  return log_gamma(arg).real();
}

double estimated_log_abs_integrand(const MellinKernel& k, Complex s, Complex lz) {
  double out = (s * (lz + k.log_base)).real();
  for (const auto& g : k.numerators()) out += factor_log_abs(g, s);
  for (const auto& g : k.denominators()) out -= factor_log_abs(g, s);
  return out;
}

double exact_log_abs_integrand(const MellinKernel& k, Complex s, Complex lz) {
  return (kernel_log_eval(k, s) + s * lz).real();
}

ConvergenceClass classify(const MellinKernel& k, double phase, double anchor) {
  const double kappa = decay_rate(k);
  const double margin = kappa - std::abs(phase);
  if (margin > kClassTolerance) return ConvergenceClass::Absolute;
  if (std::abs(margin) <= kClassTolerance && algebraic_exponent(k, anchor) < 0.0) return ConvergenceClass::Conditional;
  return ConvergenceClass::Divergent;
}

std::string class_name(ConvergenceClass c) {
  switch (c) {
    case ConvergenceClass::Absolute:
      return "absolute";
    case ConvergenceClass::Conditional:
      return "conditional";
    case ConvergenceClass::Divergent:
      return "divergent";
  }
  return "?";
}

double anchor_for_classification(const MellinKernel& k) {
  try {
    return choose_contour(k).anchor;
  } catch (const ContourError&) {
    return 0.0;
  }
}

// Throws ContourError unless every pole is on its own side of the line or
// enclosed by a detour routing it there.
void validate_contour(const MellinKernel& k, const Contour& c) {
  if (!std::isfinite(c.anchor)) throw ContourError("contour anchor is not finite");
  if (c.truncation < 0.0 || !std::isfinite(c.truncation)) throw ContourError("contour truncation must be >= 0");
  const auto has_detour = [&](Complex p, Side side) {
    return std::any_of(c.detours.begin(), c.detours.end(), [&](const Detour& d) {
      return d.side == side && same_point(d.center, p) && d.radius > 0.0 &&
             d.radius < std::abs(p.real() - c.anchor);
    });
  };
  for (Complex p : right_poles_below(k, c.anchor + kPoleTolerance)) {
    if (std::abs(p.real() - c.anchor) <= kPoleTolerance)
      throw ContourError("contour passes through a pole", fmt(p));
    if (!has_detour(p, Side::Right))
      throw ContourError("right-opening pole left of the contour without a detour", fmt(p));
  }
  for (Complex p : left_poles_above(k, c.anchor - kPoleTolerance)) {
    if (std::abs(p.real() - c.anchor) <= kPoleTolerance)
      throw ContourError("contour passes through a pole", fmt(p));
    if (!has_detour(p, Side::Left))
      throw ContourError("left-opening pole right of the contour without a detour", fmt(p));
  }
}

// (1/2 pi i) of the integral of f around a circle, by the trapezoid rule with
// doubling until two successive rules agree.
struct LoopResult {
  Complex value;
  double error;
  std::size_t nodes;
};

LoopResult loop_integral(const std::function<Complex(Complex)>& f, const Detour& d, double tol) {
  const auto rule = [&](std::size_t n) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex w = d.radius * std::polar(1.0, kTwoPi * static_cast<double>(i) / static_cast<double>(n));
      sum += f(d.center + w) * w;
    }
    return sum / static_cast<double>(n);
  };
  std::size_t n = 16;
  std::size_t nodes = n;
  Complex prev = rule(n);
  for (;;) {
    n *= 2;
    nodes += n;
    const Complex next = rule(n);
    const double diff = std::abs(next - prev);
    if (diff <= std::max(tol * std::abs(next), 1e-15 * std::abs(next)) || diff == 0.0) return {next, diff, nodes};
    if (n >= 8192) return {next, diff, nodes};
    prev = next;
  }
}

}  // namespace

bool MellinKernel::is_g_kernel() const {
  const auto unit = [](const std::vector<GammaFactor>& v) {
    return std::all_of(v.begin(), v.end(), [](const GammaFactor& f) { return f.mult == 1.0; });
  };
  return unit(up_left) && unit(up_right) && unit(down_left) && unit(down_right);
}

std::vector<LinearGamma> MellinKernel::numerators() const {
  std::vector<LinearGamma> out;
  for (const auto& f : up_left) out.push_back({f.param, -f.mult});
  for (const auto& f : up_right) out.push_back({1.0 - f.param, f.mult});
  return out;
}

std::vector<LinearGamma> MellinKernel::denominators() const {
  std::vector<LinearGamma> out;
  for (const auto& f : down_left) out.push_back({1.0 - f.param, f.mult});
  for (const auto& f : down_right) out.push_back({f.param, -f.mult});
  return out;
}

double MellinKernel::multiplier_balance() const {
  double sum = 0.0;
  for (const auto& f : up_left) sum += f.mult;
  for (const auto& f : up_right) sum += f.mult;
  for (const auto& f : down_left) sum -= f.mult;
  for (const auto& f : down_right) sum -= f.mult;
  return sum;
}

void MellinKernel::set_base(Complex c, int sheet) {
  check_finite(c, "kernel base");
  if (c == 0.0) throw ParameterError("kernel base must be nonzero");
  base = c;
  base_sheet = sheet;
  log_base = std::log(c) + Complex(0.0, kTwoPi * sheet);
}

std::size_t MellinKernel::cancel_common_factors(double tol) {
  std::size_t removed = 0;
  // Gamma(1 - a + alpha s) against Gamma(1 - b + beta s), and
  // Gamma(b - beta s) against Gamma(a - alpha s).
  const auto cancel = [&](std::vector<GammaFactor>& num, std::vector<GammaFactor>& den) {
    for (std::size_t i = 0; i < num.size();) {
      const auto match = std::find_if(den.begin(), den.end(), [&](const GammaFactor& d) {
        return d.mult == num[i].mult && std::abs(d.param - num[i].param) <= tol;
      });
      if (match == den.end()) {
        ++i;
        continue;
      }
      den.erase(match);
      num.erase(num.begin() + static_cast<std::ptrdiff_t>(i));
      ++removed;
    }
  };
  cancel(up_right, down_left);
  cancel(up_left, down_right);
  cancelled_pairs += removed;
  return removed;
}

MellinKernel g_kernel(std::size_t m, std::size_t n, std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<double> alpha(a.size(), 1.0);
  std::vector<double> beta(b.size(), 1.0);
  return h_kernel(m, n, a, alpha, b, beta);
}

MellinKernel h_kernel(std::size_t m, std::size_t n, std::span<const Complex> a, std::span<const double> alpha,
                      std::span<const Complex> b, std::span<const double> beta) {
  if (m > b.size() || n > a.size())
    throw ParameterError("orders must satisfy m <= q and n <= p",
                         "m=" + std::to_string(m) + " n=" + std::to_string(n) + " p=" + std::to_string(a.size()) +
                             " q=" + std::to_string(b.size()));
  if (alpha.size() != a.size() || beta.size() != b.size())
    throw ParameterError("multiplier count does not match parameter count");
  MellinKernel k;
  for (std::size_t j = 0; j < a.size(); ++j) {
    check_finite(a[j], "parameter a");
    check_multiplier(alpha[j], "multiplier alpha");
    (j < n ? k.up_right : k.down_right).push_back({a[j], alpha[j]});
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    check_finite(b[i], "parameter b");
    check_multiplier(beta[i], "multiplier beta");
    (i < m ? k.up_left : k.down_left).push_back({b[i], beta[i]});
  }
  return k;
}

Complex kernel_log_eval(const MellinKernel& kernel, Complex s) {
  Complex out = s * kernel.log_base;
  for (const auto& g : kernel.numerators()) out += log_gamma(g.offset + g.slope * s);
  for (const auto& g : kernel.denominators()) {
    const Complex arg = g.offset + g.slope * s;
    if (detect_pole(arg).is_pole) return {-kInf, 0.0};
    out -= log_gamma(arg);
  }
  return out;
}

PoleFamilies pole_families(const MellinKernel& kernel, std::size_t count) {
  if (count == 0) throw ParameterError("pole count must be >= 1");
  const auto build = [&](const std::vector<GammaFactor>& factors, Side side) {
    std::vector<Pole> raw;
    for (std::size_t f = 0; f < factors.size(); ++f)
      for (std::size_t l = 0; l < count; ++l)
        raw.push_back({side == Side::Right ? right_pole(factors[f], l) : left_pole(factors[f], l), side, f, l, 1});
    std::stable_sort(raw.begin(), raw.end(), [](const Pole& x, const Pole& y) {
      if (x.location.real() != y.location.real()) return x.location.real() < y.location.real();
      return x.location.imag() < y.location.imag();
    });
    std::vector<Pole> merged;
    for (const auto& p : raw) {
      bool found = false;
      for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
        if (p.location.real() - it->location.real() > kPoleTolerance * std::max(1.0, std::abs(p.location))) break;
        if (same_point(it->location, p.location)) {
          ++it->order;
          found = true;
          break;
        }
      }
      if (!found) merged.push_back(p);
    }
    if (side == Side::Left) std::reverse(merged.begin(), merged.end());
    return merged;
  };
  return {build(kernel.up_right, Side::Left), build(kernel.up_left, Side::Right)};
}

Contour choose_contour(const MellinKernel& kernel) {
  Contour c;
  if (kernel.up_left.empty() && kernel.up_right.empty()) return c;
  const Window w = separation_window(kernel);
  if (w.right - w.left > kPoleTolerance) {
    if (std::isinf(w.left))
      c.anchor = w.right - 0.5;
    else if (std::isinf(w.right))
      c.anchor = w.left + 0.5;
    else
      c.anchor = 0.5 * (w.left + w.right);
    return c;
  }

  // Empty window: w.right <= w.left, both finite.
  const std::vector<Complex> rights = right_poles_below(kernel, w.left + 0.5 + kPoleTolerance);
  const std::vector<Complex> lefts = left_poles_above(kernel, w.right - 0.5 - kPoleTolerance);
  for (Complex r : rights)
    for (Complex l : lefts)
      if (same_point(r, l))
        throw ContourError("a pole belongs to both families; no contour separates them", fmt(r));

  std::vector<double> reals;
  for (Complex p : rights) reals.push_back(p.real());
  for (Complex p : lefts) reals.push_back(p.real());
  std::sort(reals.begin(), reals.end());
  reals.erase(std::unique(reals.begin(), reals.end(),
                          [](double x, double y) { return std::abs(x - y) <= kPoleTolerance; }),
              reals.end());
  std::vector<double> candidates = {w.right - 0.5, w.left + 0.5};
  for (std::size_t i = 0; i + 1 < reals.size(); ++i) {
    const double mid = 0.5 * (reals[i] + reals[i + 1]);
    if (mid >= w.right - 0.5 && mid <= w.left + 0.5) candidates.push_back(mid);
  }

  double best_anchor = 0.0;
  std::size_t best_count = std::numeric_limits<std::size_t>::max();
  double best_clearance = -1.0;
  for (double x : candidates) {
    std::size_t count = 0;
    double clearance = kInf;
    for (Complex p : rights) {
      if (p.real() < x) ++count;
      clearance = std::min(clearance, std::abs(p.real() - x));
    }
    for (Complex p : lefts) {
      if (p.real() > x) ++count;
      clearance = std::min(clearance, std::abs(p.real() - x));
    }
    if (clearance <= kMinClearance) continue;  // the line would pass through a pole
    const bool better = count < best_count || (count == best_count && clearance > best_clearance + 1e-12) ||
                        (count == best_count && std::abs(clearance - best_clearance) <= 1e-12 && x < best_anchor);
    if (better) {
      best_anchor = x;
      best_count = count;
      best_clearance = clearance;
    }
  }
  if (best_count == std::numeric_limits<std::size_t>::max())
    throw ContourError("every candidate line passes through a pole");
  if (best_count > kMaxDetours) throw ContourError("too many poles on the wrong side of every candidate line");

  c.kind = ContourKind::Indented;
  c.anchor = best_anchor;
  std::vector<Complex> all = rights;
  all.insert(all.end(), lefts.begin(), lefts.end());
  const auto add_detour = [&](Complex p, Side side) {
    double gap = kInf;
    for (Complex q : all)
      if (!same_point(p, q)) gap = std::min(gap, std::abs(p - q));
    const double radius = std::min({0.25, 0.5 * gap, 0.5 * std::abs(p.real() - c.anchor)});
    for (const auto& d : c.detours)
      if (same_point(d.center, p)) return;
    c.detours.push_back({p, radius, side});
  };
  for (Complex p : rights)
    if (p.real() < c.anchor) add_detour(p, Side::Right);
  for (Complex p : lefts)
    if (p.real() > c.anchor) add_detour(p, Side::Left);
  mb_log("indented contour at Re s = " + fmt(c.anchor) + " with " + std::to_string(c.detours.size()) + " detours");
  return c;
}

double decay_rate(const MellinKernel& kernel) { return 0.5 * kPi * kernel.multiplier_balance(); }

double algebraic_exponent(const MellinKernel& kernel, double anchor) {
  double e = 0.0;
  for (const auto& g : kernel.numerators()) e += g.offset.real() + g.slope * anchor - 0.5;
  for (const auto& g : kernel.denominators()) e -= g.offset.real() + g.slope * anchor - 0.5;
  return e;
}

ConvergenceClass convergence_class(const MellinKernel& kernel, Complex z, std::optional<Contour> contour) {
  const double anchor = contour ? contour->anchor : anchor_for_classification(kernel);
  return classify(kernel, std::arg(z) + kernel.log_base.imag(), anchor);
}

std::size_t default_max_nodes() {
  constexpr std::size_t kDefault = 200000;
  const char* v = std::getenv("MB_MAX_NODES");
  if (v == nullptr || *v == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || n == 0) return kDefault;
  return static_cast<std::size_t>(n);
}

double truncation_height(const MellinKernel& kernel, Complex z, double anchor, double tol,
                         std::optional<double> arg_override) {
  const double arg = arg_of(z, arg_override);
  const Complex lz(std::log(std::abs(z)), arg);
  const double phase = arg + kernel.log_base.imag();
  const double kappa = decay_rate(kernel);

  double log_scale = -kInf;
  for (int i = -16; i <= 16; ++i)
    log_scale = std::max(log_scale, exact_log_abs_integrand(kernel, {anchor, 0.25 * i}, lz));
  if (!std::isfinite(log_scale)) log_scale = 0.0;
  const double target = std::log(tol) + log_scale + std::log(1e-3);

  double height = 0.0;
  for (const double dir : {1.0, -1.0}) {
    const double rate = kappa + dir * phase;
    if (rate <= 0.0)
      throw ConvergenceError("integrand does not decay along the contour",
                             "kappa=" + fmt(kappa) + " phase=" + fmt(phase));
    const double log_rate = std::log(rate);
    const auto tail = [&](double t, bool exact) {
      const Complex s(anchor, dir * t);
      const double lg = exact ? exact_log_abs_integrand(kernel, s, lz) : estimated_log_abs_integrand(kernel, s, lz);
      return lg - log_rate + std::log(2.0);
    };
    double hi = 2.0;
    while (tail(hi, false) > target) {
      hi *= 1.5;
      if (hi > 1e6) throw ConvergenceError("no truncation height meets the tolerance", "tol=" + fmt(tol));
    }
    double lo = hi / 1.5;
    for (int it = 0; it < 30 && hi - lo > 1e-3 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail(mid, false) > target ? lo : hi) = mid;
    }
    while (tail(hi, true) > target) {
      hi *= 1.1;
      if (hi > 1e6) throw ConvergenceError("no truncation height meets the tolerance", "tol=" + fmt(tol));
    }
    height = std::max(height, hi);
  }
  return std::max(height, 2.0);
}

EvalResult integrate(const MellinKernel& kernel, Complex z, const Contour& contour, double tol,
                     const IntegrateOptions& options) {
  check_finite(z, "z");
  if (z == 0.0) throw ParameterError("Mellin-Barnes integral requires z != 0");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ParameterError("tolerance must be positive", fmt(tol));
  const double arg = arg_of(z, options.arg_override);
  const ConvergenceClass cls = classify(kernel, arg + kernel.log_base.imag(), contour.anchor);
  if (cls != ConvergenceClass::Absolute)
    throw ConvergenceError("contour integral is not absolutely convergent (" + class_name(cls) + ")",
                           "kappa=" + fmt(decay_rate(kernel)) + " arg=" + fmt(arg));
  validate_contour(kernel, contour);

  const Complex lz(std::log(std::abs(z)), arg);
  EvalResult result;
  result.contour = contour;
  result.method = Method::Quadrature;
  result.arg_z = arg;
  result.contour.truncation =
      contour.truncation > 0.0 ? contour.truncation : truncation_height(kernel, z, contour.anchor, tol, options.arg_override);
  const double height = result.contour.truncation;

  const auto kernel_times_power = [&](Complex s) { return std::exp(kernel_log_eval(kernel, s) + s * lz); };
  const auto on_line = [&](double t) { return kernel_times_power({contour.anchor, t}) / kTwoPi; };

  const std::size_t budget = options.max_nodes > 0 ? options.max_nodes : default_max_nodes();
  QuadratureOptions q;
  q.rel_tol = 0.1 * tol;
  q.max_evaluations = budget;
  q.initial_panels = static_cast<std::size_t>(std::ceil(height));
  if (15 * q.initial_panels > budget)
    throw QuadratureError("node budget too small for the truncated contour",
                          "T=" + fmt(height) + " budget=" + std::to_string(budget));
  const QuadratureResult line = gauss_kronrod(on_line, -height, height, q);
  if (!line.converged)
    throw QuadratureError("adaptive quadrature did not reach the tolerance within the node budget",
                          "nodes=" + std::to_string(line.evaluations) + " err=" + fmt(line.error) +
                              " value=" + fmt(line.value));

  Complex value = line.value;
  double error = line.error;
  std::size_t nodes = line.evaluations;
  for (const auto& d : contour.detours) {
    const LoopResult loop = loop_integral(kernel_times_power, d, 0.1 * tol);
    value += d.side == Side::Left ? loop.value : -loop.value;
    error += loop.error;
    nodes += loop.nodes;
  }
  const double kappa = decay_rate(kernel);
  const double phase = arg + kernel.log_base.imag();
  const double tail = std::abs(on_line(height)) / (kappa + phase) + std::abs(on_line(-height)) / (kappa - phase);
  result.value = value;
  result.err_estimate = error + tail;
  result.nodes_used = nodes;
  result.diagnostics = "anchor=" + fmt(contour.anchor) + " T=" + fmt(height) + " nodes=" + std::to_string(nodes) +
                       " detours=" + std::to_string(contour.detours.size());
  mb_log("integrate: " + result.diagnostics + " value=" + fmt(value) + " err=" + fmt(result.err_estimate));
  return result;
}

EvalResult residue_series(const MellinKernel& kernel, Complex z, Side side, std::size_t n_max, double tol,
                          const IntegrateOptions& options) {
  check_finite(z, "z");
  if (z == 0.0) throw ParameterError("residue series requires z != 0");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ParameterError("tolerance must be positive", fmt(tol));
  if (n_max == 0) throw NonConvergentSeriesError("no residue terms allowed (n_max = 0)");

  const PoleFamilies families = pole_families(kernel, n_max);
  const std::vector<Pole>& poles = side == Side::Right ? families.right_opening : families.left_opening;
  const std::vector<GammaFactor>& sources = side == Side::Right ? kernel.up_left : kernel.up_right;
  if (poles.empty()) throw NonConvergentSeriesError("kernel has no poles on the chosen side");

  const double arg = arg_of(z, options.arg_override);
  // log z and log base in wide precision: s0 log z grows with the pole index.
  const WideComplex wz = widen(z);
  WideComplex lz(log(abs(wz)), options.arg_override ? WideReal(arg) : atan2(wz.imag(), wz.real()));
  if (kernel.log_base != 0.0) {
    const WideComplex wb = widen(kernel.base);
    lz += WideComplex(log(abs(wb)), atan2(wb.imag(), wb.real()) +
                                        WideReal(2) * boost::math::constants::pi<WideReal>() * kernel.base_sheet);
  }
  const std::vector<LinearGamma> nums = kernel.numerators();
  const std::vector<LinearGamma> dens = kernel.denominators();

  WideComplex sum(0);
  WideReal abs_sum(0);
  std::vector<double> recent;  // magnitudes of the last nonzero terms
  int small_streak = 0;
  double previous = kInf;
  bool converged = false;
  std::size_t used = 0;

  for (const Pole& pole : poles) {
    if (used == n_max) break;
    ++used;
    const GammaFactor& src = sources[pole.factor];
    const WideComplex s0 = side == Side::Right
                               ? (widen(src.param) + WideReal(pole.ladder_index)) / WideReal(src.mult)
                               : (widen(src.param) - WideReal(1) - WideReal(pole.ladder_index)) / WideReal(src.mult);

    WideComplex log_term = s0 * lz;
    int order = 0;
    bool negative = false;
    const auto singular_part = [&](const LinearGamma& g, const WideComplex& x, int sign) {
      const PoleReport rep = detect_pole(narrow(x));
      if (!rep.is_pole) return false;
      // Gamma(c + gamma s) ~ (-1)^l / (l! gamma (s - s0)) near the pole.
      const WideReal log_fact = log_gamma_wide(WideComplex(WideReal(rep.pole_index + 1))).real();
      log_term += WideReal(-sign) * (WideComplex(log_fact) + log(widen(Complex(g.slope, 0.0))));
      if (rep.pole_index % 2 == 1) negative = !negative;
      order += sign;
      return true;
    };
    for (const auto& g : nums) {
      const WideComplex x = widen(g.offset) + WideReal(g.slope) * s0;
      if (!singular_part(g, x, 1)) log_term += log_gamma_wide(x);
    }
    for (const auto& g : dens) {
      const WideComplex x = widen(g.offset) + WideReal(g.slope) * s0;
      if (!singular_part(g, x, -1)) log_term -= log_gamma_wide(x);
    }
    if (order <= 0) continue;  // removable: the denominator cancels the pole
    if (order >= 2)
      throw HigherOrderPoleError("residue series needs simple poles", "s=" + fmt(narrow(s0)) +
                                                                          " order=" + std::to_string(order));
    WideComplex term = exp(log_term);
    if (negative) term = -term;
    sum += term;
    abs_sum += abs(term);

    const double mag = static_cast<double>(abs(term));
    recent.push_back(mag);
    const double total = static_cast<double>(abs(sum));
    if (mag < tol * total && mag <= previous)
      ++small_streak;
    else
      small_streak = 0;
    previous = mag;
    if (small_streak >= 3) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NonConvergentSeriesError("residue series did not converge within n_max terms",
                                   "n_max=" + std::to_string(n_max) + " partial=" + fmt(narrow(sum)));

  EvalResult result;
  result.value = narrow(side == Side::Right ? WideComplex(-sum) : sum);
  double tail = 0.0;
  for (std::size_t i = recent.size() >= 3 ? recent.size() - 3 : 0; i < recent.size(); ++i) tail += recent[i];
  result.err_estimate = tail + 1e-30 * static_cast<double>(abs_sum) + 2.3e-16 * std::abs(result.value);
  result.nodes_used = used;
  result.method = side == Side::Right ? Method::ResiduesRight : Method::ResiduesLeft;
  result.arg_z = arg;
  result.contour = Contour{};
  try {
    result.contour = choose_contour(kernel);
  } catch (const ContourError&) {
  }
  result.diagnostics = std::string("residues ") + (side == Side::Right ? "right" : "left") +
                       " terms=" + std::to_string(used);
  mb_log("residue_series: " + result.diagnostics + " value=" + fmt(result.value) + " err=" + fmt(result.err_estimate));
  return result;
}

std::vector<IntegrandSample> sample_integrand(const MellinKernel& kernel, Complex z, const Contour& contour,
                                              std::size_t points, double tol) {
  if (z == 0.0) throw ParameterError("integrand sampling requires z != 0");
  if (points < 2) throw ParameterError("need at least 2 sample points");
  const double height =
      contour.truncation > 0.0 ? contour.truncation : truncation_height(kernel, z, contour.anchor, tol);
  const Complex lz(std::log(std::abs(z)), std::arg(z));
  std::vector<IntegrandSample> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = -height + 2.0 * height * static_cast<double>(i) / static_cast<double>(points - 1);
    const Complex s(contour.anchor, t);
    out.push_back({t, std::exp(kernel_log_eval(kernel, s) + s * lz)});
  }
  return out;
}

std::string method_name(Method method) {
  switch (method) {
    case Method::Quadrature:
      return "quadrature";
    case Method::ResiduesLeft:
      return "residues_left";
    case Method::ResiduesRight:
      return "residues_right";
  }
  return "unknown";
}

std::string contour_kind_name(ContourKind kind) { return kind == ContourKind::Indented ? "indented" : "vertical"; }

}  // namespace pincherle
