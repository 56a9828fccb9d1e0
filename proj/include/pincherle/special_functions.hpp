#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pincherle/fde_solutions.hpp"
#include "pincherle/mellin_barnes.hpp"

namespace pincherle {

struct GParams {
  std::size_t m = 0, n = 0, p = 0, q = 0;
  std::vector<Complex> a;  // p entries
  std::vector<Complex> b;  // q entries
};

struct HParams {
  GParams g;
  std::vector<double> alpha;  // p positive multipliers
  std::vector<double> beta;   // q positive multipliers
};

/// [sign z prod_j (theta - left_j) - prod_k (theta - right_k)] u = 0 with
/// theta = z d/dz; left_j = a_j - 1, right_k = b_k.
struct ThetaOperatorForm {
  int sign = 1;
  std::vector<Complex> left_factors;
  std::vector<Complex> right_factors;
  bool z_multiplies_left = true;

  friend bool operator==(const ThetaOperatorForm&, const ThetaOperatorForm&) = default;
};

enum class PfqClass { ConvergesEverywhere, ConvergesUnitDisk, DivergesNonzero };

/// Region of convergence of the pFq series by (p, q) alone: p <= q entire,
/// p = q + 1 the unit disk, p > q + 1 only z = 0.
PfqClass classify_pfq(std::size_t p, std::size_t q, Complex z = 0.0);
/// Whether the (non-terminating) series converges at z.
bool series_converges(std::size_t p, std::size_t q, Complex z);

/// Partial sums of the pFq series until 3 consecutive terms fall below
/// tol |sum|; terminating series are summed exactly. Throws
/// InvalidDenominatorError for a non-positive integer b_k reached before
/// termination, DivergentSeriesError outside the convergence region.
Complex pfq(std::span<const Complex> a, std::span<const Complex> b, Complex z, double tol = 1e-15);

/// Relative mismatch between c_{n+1}/c_n of the series coefficients (built
/// from rising factorials) and prod(a + n) / (prod(b + n) (n + 1)).
double series_recurrence_residual(std::span<const Complex> a, std::span<const Complex> b, std::size_t n);

// Residues: the side preferred_residue_side picks for z.
enum class EvalMethod { Auto, Quadrature, Residues, ResiduesLeft, ResiduesRight };

struct MeijerOptions {
  EvalMethod method = EvalMethod::Auto;
  std::size_t n_max = 5000;
  IntegrateOptions integrate;
  std::optional<Contour> contour;  // replaces choose_contour()
};

/// Throws ParameterError for inconsistent orders or sizes, and when a
/// pole of Gamma(b_k - s), k <= m, meets a pole of Gamma(1 - a_j + s), j <= n.
void validate(const GParams& params);
void validate(const HParams& params);

MellinKernel kernel_of(const GParams& params);
MellinKernel kernel_of(const HParams& params);

/// Which side's residue series converges at z: right when
/// sum(beta) > sum(alpha), or when they balance and |z| < prod alpha^-alpha
/// prod beta^beta; left otherwise.
Side preferred_residue_side(const MellinKernel& kernel, Complex z);

/// Evaluation of a kernel at z: quadrature when the integral converges
/// absolutely (falling back to residues if quadrature fails), residues when
/// it converges only conditionally; ConvergenceError when divergent.
EvalResult evaluate_kernel(const MellinKernel& kernel, Complex z, double tol, const MeijerOptions& options = {});

EvalResult meijer_g(const GParams& params, Complex z, double tol, const MeijerOptions& options = {});
EvalResult fox_h(const HParams& params, Complex z, double tol, const MeijerOptions& options = {});

/// pFq through prod Gamma(b) / prod Gamma(a) G^{1,p}_{p,q+1}[-z | 1 - a; 0, 1 - b].
/// Needs a_j, b_k away from 0, -1, -2, ... and |arg(-z)| < pi (z off [0, inf)).
EvalResult pfq_via_g(std::span<const Complex> a, std::span<const Complex> b, Complex z, double tol,
                     const MeijerOptions& options = {});

/// Operator of the G differential equation for the given orders and parameters.
ThetaOperatorForm theta_operator(const GParams& params);

/// Same operator reached from a first-order difference equation: roots rho,
/// sigma of its coefficients give a_j = 1 + rho_j, b_k = 1 + sigma_k and the
/// sign (-1)^{p-m-n}. Throws OrderError unless m <= q and n <= p.
ThetaOperatorForm derive_g_ode(const FirstOrderFDE& fde, std::size_t m, std::size_t n);

/// Normalized residual of the G differential equation applied to `u` at z,
/// derivatives in w = log z by central differences of step `step` with one
/// Richardson extrapolation (order 2 -> 4). 0 when every term vanishes.
double g_ode_residual(const ThetaOperatorForm& op, const std::function<Complex(Complex)>& u, Complex z,
                      double step);
/// Same with u = meijer_g(params, .) evaluated to 1e-13.
double g_ode_residual(const GParams& params, Complex z, double step);

}  // namespace pincherle
