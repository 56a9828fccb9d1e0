#include "pincherle/cgamma.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pincherle/errors.hpp"

namespace pincherle {
namespace {

// Lanczos coefficients for g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 14> kLanczosCoef = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;
constexpr double kLogPi = 1.14472988584940017414342735135305871;

// Valid for Re z >= 0.5.
Complex lanczos_log_gamma(Complex z) {
  Complex series = kLanczosC0;
  Complex y = z;
  for (double c : kLanczosCoef) {
    y += 1.0;
    series += c / y;
  }
  const Complex t = z + (kLanczosG + 0.5);
  return (z + 0.5) * std::log(t) - t + kLogSqrtTwoPi + std::log(series) - std::log(z);
}

double reduce_arg(double phase) {
  // into (-pi, pi]
  phase = std::remainder(phase, 2.0 * kPi);
  if (phase <= -kPi) phase += 2.0 * kPi;
  return phase;
}

}  // namespace

PoleReport detect_pole(Complex z, double tol) {
  PoleReport report;
  const double n = std::max(0.0, std::round(-z.real()));
  report.pole_index = static_cast<std::uint64_t>(n);
  report.distance = std::abs(z + n);
  report.is_pole = report.distance <= tol;
  return report;
}

Complex log_sin_pi(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi (k + r + iy)) = (-1)^k sin(pi (r + iy)), |r| <= 1/2
  const double k = std::round(z.real());
  const double r = z.real() - k;
  const double y = z.imag();
  const bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
  Complex value;
  if (y < 10.0) {
    value = std::log(std::sin(Complex(kPi * r, kPi * y)));
  } else {
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w}), e^{2 i pi w} tiny
    const Complex w(r, y);
    const Complex small = std::exp(Complex(0.0, 2.0 * kPi) * w);
    value = Complex(-std::log(2.0) + kPi * y, kPi / 2.0 - kPi * r) + std::log(1.0 - small);
  }
  if (odd) value += Complex(0.0, kPi);
  return {value.real(), reduce_arg(value.imag())};
}

Complex log_gamma(Complex z, double pole_tol) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z), pole_tol));
  const PoleReport pole = detect_pole(z, pole_tol);
  if (pole.is_pole)
    throw PoleError("log_gamma: argument at a pole of Gamma",
                    "z = -" + std::to_string(pole.pole_index));
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Reflection, with the 2 pi i correction that keeps the analytic branch.
  const double correction = 2.0 * kPi * std::floor(0.5 * z.real() + 0.25);
  return Complex(kLogPi, correction) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex pochhammer(Complex alpha, std::uint64_t n) {
  if (n == 0) return 1.0;
  const auto product = [&] {
    Complex result = 1.0;
    for (std::uint64_t k = 0; k < n; ++k) result *= alpha + static_cast<double>(k);
    return result;
  };
  if (n <= 64) return product();
  const Complex top = alpha + static_cast<double>(n);
  if (detect_pole(alpha).is_pole || detect_pole(top).is_pole) return product();
  return std::exp(log_gamma(top) - log_gamma(alpha));
}

double asymptotic_log_abs_gamma(double a, double eta) {
  const double mag = std::abs(eta);
  if (!(mag >= 1.0))
    throw DomainError("asymptotic_log_abs_gamma: |eta| must be >= 1",
                      "eta = " + std::to_string(eta));
  return (a - 0.5) * std::log(mag) - 0.5 * kPi * mag + kLogSqrtTwoPi;
}

}  // namespace pincherle
