#pragma once

// Complex gamma kernel: log-gamma, Pochhammer symbol, pole detection and the
// leading-order magnitude estimate of Gamma on vertical lines.

#include <complex>
#include <cstdint>

namespace pincherle {

using Complex = std::complex<double>;

inline constexpr double kPoleTolerance = 1e-9;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

struct PoleReport {
  bool is_pole = false;
  std::uint64_t pole_index = 0;  // n in z ~ -n
  double distance = 0.0;
};

/// Nearest non-positive integer to z and the distance to it.
PoleReport detect_pole(Complex z, double tol = kPoleTolerance);

/// Principal branch of log Gamma(z): real on the positive axis and analytic in
/// the plane cut along the negative real axis. Lanczos approximation for
/// Re z >= 0.5, reflection below. Throws PoleError within `pole_tol` of
/// 0, -1, -2, ...
Complex log_gamma(Complex z, double pole_tol = kPoleTolerance);

Complex gamma(Complex z);

/// Principal log of sin(pi z), stable for large |Im z|.
Complex log_sin_pi(Complex z);

/// Rising factorial (alpha)_n. Exact product for n <= 64, log-domain gamma
/// ratio above (falls back to the product when alpha or alpha+n sits on a
/// pole).
Complex pochhammer(Complex alpha, std::uint64_t n);

/// log|Gamma(a + i eta)| ~ (a - 1/2) log|eta| - pi |eta| / 2 + log(2 pi) / 2.
/// Throws DomainError for |eta| < 1.
double asymptotic_log_abs_gamma(double a, double eta);

/// The same estimate in any real type with log, abs and a pi constant; used
/// to look at the estimate's error below double resolution.
template <class Real, class Pi>
Real asymptotic_log_abs_gamma_in(const Real& a, const Real& eta, const Pi& pi) {
  using std::abs;
  using std::log;
  const Real mag = abs(eta);
  return (a - Real(0.5)) * log(mag) - Real(pi) * mag / 2 + log(Real(2) * Real(pi)) / 2;
}

}  // namespace pincherle
