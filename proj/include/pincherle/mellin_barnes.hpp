#pragma once

// Mellin-Barnes integrals (1/2 pi i) \int_L K(s) z^s ds over gamma-product
// kernels
//
//          prod_{up_left} G(b - beta s)  prod_{up_right} G(1 - a + alpha s)
//   K(s) = ---------------------------------------------------------------- base^s
//          prod_{down_left} G(1 - b + beta s) prod_{down_right} G(a - alpha s)
//
// Unit multipliers give the Meijer G kernel, general positive multipliers the
// Fox H kernel. Up-left factors contribute right-opening pole ladders
// s = (b + l) / beta, up-right factors left-opening ladders
// s = (a - 1 - l) / alpha.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pincherle/cgamma.hpp"

namespace pincherle {

struct GammaFactor {
  Complex param;
  double mult = 1.0;

  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

/// Gamma(offset + slope * s); the uniform form every kernel factor reduces to.
struct LinearGamma {
  Complex offset;
  double slope;
};

struct MellinKernel {
  std::vector<GammaFactor> up_left;     // Gamma(b - beta s), numerator
  std::vector<GammaFactor> up_right;    // Gamma(1 - a + alpha s), numerator
  std::vector<GammaFactor> down_left;   // Gamma(1 - b + beta s), denominator
  std::vector<GammaFactor> down_right;  // Gamma(a - alpha s), denominator
  Complex base = 1.0;
  /// log(base) actually used for base^s; principal unless base_sheet != 0.
  Complex log_base = 0.0;
  int base_sheet = 0;
  std::size_t cancelled_pairs = 0;

  bool is_g_kernel() const;
  std::vector<LinearGamma> numerators() const;
  std::vector<LinearGamma> denominators() const;
  /// Sum of numerator multipliers minus sum of denominator multipliers.
  double multiplier_balance() const;

  /// Sets base and its log on the given sheet: log|c| + i (Arg c + 2 pi sheet).
  void set_base(Complex c, int sheet = 0);

  /// Removes numerator/denominator pairs that are the same function of s
  /// (parameters within tol, equal multipliers). Returns the number removed.
  std::size_t cancel_common_factors(double tol);

  friend bool operator==(const MellinKernel&, const MellinKernel&) = default;
};

/// Meijer G kernel of orders (m, n, p, q): a has p entries, b has q.
MellinKernel g_kernel(std::size_t m, std::size_t n, std::span<const Complex> a, std::span<const Complex> b);
/// Fox H kernel; multipliers must be positive.
MellinKernel h_kernel(std::size_t m, std::size_t n, std::span<const Complex> a, std::span<const double> alpha,
                      std::span<const Complex> b, std::span<const double> beta);

/// Sum of log-gammas of the numerators minus the denominators plus
/// s log(base). Empty products contribute 0. Throws PoleError at a numerator
/// pole; a denominator pole gives real part -inf (the kernel vanishes).
Complex kernel_log_eval(const MellinKernel& kernel, Complex s);

enum class Side { Left, Right };

struct Pole {
  Complex location;
  Side opens_to;           // Right: from an up-left factor
  std::size_t factor = 0;  // index in up_left (Right) or up_right (Left)
  std::size_t ladder_index = 0;
  std::size_t order = 1;   // numerator factors singular here, within the family
};

struct PoleFamilies {
  std::vector<Pole> left_opening;
  std::vector<Pole> right_opening;
};

/// The first `count` poles of each factor, coincident poles merged, sorted
/// outward (ascending real part on the right, descending on the left).
PoleFamilies pole_families(const MellinKernel& kernel, std::size_t count);

enum class ContourKind { Vertical, Indented };

struct Detour {
  Complex center;
  double radius = 0.0;
  Side side = Side::Left;  // family the enclosed pole must be routed to
};

struct Contour {
  ContourKind kind = ContourKind::Vertical;
  double anchor = 0.0;
  double truncation = 0.0;  // 0 = choose automatically
  std::vector<Detour> detours;
};

/// Vertical line between the families when their real-part window is
/// nonempty (midpoint if bounded, edge -/+ 0.5 if half-infinite, 0 with no
/// numerator poles); otherwise an indented line with small loops around the
/// poles that sit on the wrong side. Throws ContourError when a pole belongs
/// to both families.
Contour choose_contour(const MellinKernel& kernel);

enum class ConvergenceClass { Absolute, Conditional, Divergent };

/// Exponential decay rate along vertical lines,
/// kappa = (pi/2) (sum numerator multipliers - sum denominator multipliers).
double decay_rate(const MellinKernel& kernel);

/// Power of |Im s| left after the exponential parts cancel, on Re s = anchor.
double algebraic_exponent(const MellinKernel& kernel, double anchor);

/// Absolute when |arg z| < kappa; Conditional when |arg z| = kappa and the
/// algebraic exponent on the contour is negative; Divergent otherwise.
ConvergenceClass convergence_class(const MellinKernel& kernel, Complex z,
                                   std::optional<Contour> contour = std::nullopt);

enum class Method { Quadrature, ResiduesLeft, ResiduesRight };

struct EvalResult {
  Complex value;
  double err_estimate = 0.0;
  std::size_t nodes_used = 0;
  Contour contour;
  Method method = Method::Quadrature;
  double arg_z = 0.0;  // branch of arg z used for z^s
  std::string diagnostics;
};

struct IntegrateOptions {
  /// Node budget; defaults to MB_MAX_NODES from the environment, else 200000.
  std::size_t max_nodes = 0;
  /// Replaces the principal arg z in z^s = exp(s (ln|z| + i arg z)).
  std::optional<double> arg_override;
};

std::size_t default_max_nodes();

/// (1/2 pi i) \int_L K(s) z^s ds by adaptive Gauss-Kronrod on the truncated
/// contour. Truncation (when contour.truncation == 0) puts the asymptotic
/// tail below tol relative to the integrand scale. Throws ConvergenceError
/// unless convergence_class is Absolute, ParameterError for z == 0,
/// QuadratureError when the node budget runs out.
EvalResult integrate(const MellinKernel& kernel, Complex z, const Contour& contour, double tol,
                     const IntegrateOptions& options = {});

/// Closes the contour on one side and sums residues of K(s) z^s in quad
/// precision: -sum on the right, +sum on the left. Stops after 3 consecutive
/// terms below tol |sum|. Throws HigherOrderPoleError for poles of order > 1
/// and NonConvergentSeriesError when n_max terms do not suffice.
EvalResult residue_series(const MellinKernel& kernel, Complex z, Side side, std::size_t n_max, double tol,
                          const IntegrateOptions& options = {});

/// Samples of K(s) z^s along the vertical part of a contour, Im s from -T to
/// T. Used for integrand dumps.
struct IntegrandSample {
  double im_s;
  Complex value;
};
std::vector<IntegrandSample> sample_integrand(const MellinKernel& kernel, Complex z, const Contour& contour,
                                              std::size_t points, double tol = 1e-12);

/// Truncation height that puts the integrand tail below tol (relative to the
/// integrand scale near Im s = 0). Throws ConvergenceError if the kernel does
/// not decay.
double truncation_height(const MellinKernel& kernel, Complex z, double anchor, double tol,
                         std::optional<double> arg_override = std::nullopt);

std::string method_name(Method method);
std::string contour_kind_name(ContourKind kind);

}  // namespace pincherle
