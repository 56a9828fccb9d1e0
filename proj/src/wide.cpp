#include "pincherle/wide.hpp"

#include <array>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

#include "pincherle/errors.hpp"

namespace pincherle {
namespace {

constexpr int kStirlingTerms = 18;
constexpr int kStirlingRadius = 25;

const WideReal& wide_pi() {
  static const WideReal pi = boost::math::constants::pi<WideReal>();
  return pi;
}

const std::array<WideReal, kStirlingTerms>& stirling_coefficients() {
  // B_{2k} / (2k (2k - 1))
  static const auto coef = [] {
    std::array<WideReal, kStirlingTerms> c{};
    for (int k = 1; k <= kStirlingTerms; ++k)
      c[k - 1] = boost::math::bernoulli_b2n<WideReal>(k) / WideReal((2 * k) * (2 * k - 1));
    return c;
  }();
  return coef;
}

WideComplex stirling(const WideComplex& w) {
  static const WideReal half_log_two_pi = log(2 * wide_pi()) / 2;
  WideComplex sum = (w - WideReal(0.5)) * log(w) - w + half_log_two_pi;
  const WideComplex inv = WideReal(1) / w;
  const WideComplex inv2 = inv * inv;
  WideComplex power = inv;
  for (const auto& c : stirling_coefficients()) {
    sum += c * power;
    power *= inv2;
  }
  return sum;
}

WideReal reduce_arg(WideReal phase) {
  const WideReal two_pi = 2 * wide_pi();
  phase -= two_pi * round(phase / two_pi);
  if (phase <= -wide_pi()) phase += two_pi;
  if (phase > wide_pi()) phase -= two_pi;
  return phase;
}

WideComplex log_sin_pi_wide(const WideComplex& z) {
  if (z.imag() < 0) return conj(log_sin_pi_wide(conj(z)));
  const WideReal k = round(z.real());
  const WideReal r = z.real() - k;
  const WideReal y = z.imag();
  const bool odd = fmod(abs(k), WideReal(2)) == 1;
  const WideReal& pi = wide_pi();
  WideComplex value;
  if (y < 30) {
    value = log(sin(WideComplex(pi * r, pi * y)));
  } else {
    const WideComplex small = exp(WideComplex(-2 * pi * y, 2 * pi * r));
    value = WideComplex(pi * y - log(WideReal(2)), pi / 2 - pi * r) + log(WideReal(1) - small);
  }
  if (odd) value += WideComplex(0, pi);
  return WideComplex(value.real(), reduce_arg(value.imag()));
}

}  // namespace

WideComplex log_gamma_wide(const WideComplex& z, double pole_tol) {
  if (z.imag() < 0) return conj(log_gamma_wide(conj(z), pole_tol));
  const PoleReport pole = detect_pole(narrow(z), pole_tol);
  if (pole.is_pole)
    throw PoleError("log_gamma_wide: argument at a pole of Gamma",
                    "z = -" + std::to_string(pole.pole_index));
  const WideReal& pi = wide_pi();
  if (z.real() < WideReal(0.5)) {
    const WideReal correction = 2 * pi * floor(z.real() / 2 + WideReal(0.25));
    return WideComplex(log(pi), correction) - log_sin_pi_wide(z) -
           log_gamma_wide(WideReal(1) - z, pole_tol);
  }
  WideComplex w = z;
  WideComplex shift_sum(0);
  while (w.real() < kStirlingRadius) {
    shift_sum += log(w);
    w += WideReal(1);
  }
  return stirling(w) - shift_sum;
}

}  // namespace pincherle
