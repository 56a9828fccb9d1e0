#include "pincherle/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "pincherle/errors.hpp"

namespace pincherle {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct HornerResult {
  Complex value;
  Complex slope;
  double bound;  // rounding error bound on value
};

HornerResult horner(std::span<const Complex> c, Complex x) {
  Complex value = c.back();
  Complex slope = 0.0;
  double bound = std::abs(value);
  const double ax = std::abs(x);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    slope = slope * x + value;
    value = value * x + c[i];
    bound = bound * ax + std::abs(value);
  }
  return {value, slope, 8.0 * kEps * bound};
}

bool all_finite(const std::vector<Complex>& roots) {
  return std::all_of(roots.begin(), roots.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void newton_polish(std::span<const Complex> c, std::vector<Complex>& roots) {
  for (auto& z : roots) {
    for (int step = 0; step < 3; ++step) {
      const auto h = horner(c, z);
      if (std::abs(h.value) <= h.bound || h.slope == 0.0) break;
      const Complex candidate = z - h.value / h.slope;
      if (std::abs(horner(c, candidate).value) >= std::abs(h.value)) break;
      z = candidate;
    }
  }
}

// Returns false when some root did not settle within the iteration budget.
bool aberth(std::span<const Complex> c, std::vector<Complex>& roots, const RootOptions& options) {
  const std::size_t d = c.size() - 1;
  const double radius = std::pow(std::abs(c.front() / c.back()), 1.0 / static_cast<double>(d));
  roots.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    roots[k] = std::polar(radius, angle);
  }
  std::vector<bool> frozen(d, false);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool done = true;
    for (std::size_t i = 0; i < d; ++i) {
      if (frozen[i]) continue;
      const auto h = horner(c, roots[i]);
      if (std::abs(h.value) <= h.bound) {
        frozen[i] = true;
        continue;
      }
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) repulsion += 1.0 / (roots[i] - roots[j]);
      const Complex ratio = h.slope == 0.0 ? Complex(1e-3 * (1.0 + std::abs(roots[i]))) : h.value / h.slope;
      const Complex step = ratio / (1.0 - ratio * repulsion);
      roots[i] -= step;
      if (std::abs(step) <= options.tolerance * std::abs(roots[i]))
        frozen[i] = true;
      else
        done = false;
    }
    if (done) return all_finite(roots);
  }
  return false;
}

std::vector<Complex> companion_roots(std::span<const Complex> c) {
  const auto d = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw RootFindingError("companion eigenvalue solver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

std::size_t degree(std::span<const Complex> coeffs) {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != 0.0) return i;
  return 0;
}

bool is_zero(std::span<const Complex> coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c == 0.0; });
}

Polynomial trimmed(std::span<const Complex> coeffs) {
  if (coeffs.empty()) return {0.0};
  return {coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(degree(coeffs)) + 1};
}

Complex evaluate(std::span<const Complex> coeffs, Complex x) {
  Complex value = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) value = value * x + coeffs[i];
  return value;
}

Polynomial derivative(std::span<const Complex> coeffs) {
  if (coeffs.size() <= 1) return {0.0};
  Polynomial out(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i) out[i - 1] = coeffs[i] * static_cast<double>(i);
  return out;
}

Polynomial multiply(std::span<const Complex> lhs, std::span<const Complex> rhs) {
  if (lhs.empty() || rhs.empty()) return {0.0};
  Polynomial out(lhs.size() + rhs.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    for (std::size_t j = 0; j < rhs.size(); ++j) out[i + j] += lhs[i] * rhs[j];
  return out;
}

Polynomial from_roots(std::span<const Complex> roots, Complex lead) {
  Polynomial out{lead};
  for (Complex r : roots) {
    const Complex factor[] = {-r, 1.0};
    out = multiply(out, factor);
  }
  return out;
}

Polynomial taylor_shift(std::span<const Complex> coeffs, Complex shift) {
  // Horner in the shifted variable: c(x + s) = (...(c_d (x+s) + c_{d-1})(x+s) ...)
  Polynomial out{0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const Complex linear[] = {shift, 1.0};
    out = multiply(out, linear);
    out[0] += coeffs[i];
  }
  return trimmed(out);
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs, const RootOptions& options) {
  const Polynomial c = trimmed(coeffs);
  if (is_zero(c)) throw ParameterError("polynomial_roots: zero polynomial has no well-defined roots");

  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  const std::span<const Complex> reduced(c.data() + zeros, c.size() - zeros);
  const std::size_t d = reduced.size() - 1;

  std::vector<Complex> roots;
  if (d == 1) {
    roots.push_back(-reduced[0] / reduced[1]);
  } else if (d > 1) {
    if (!aberth(reduced, roots, options)) roots = companion_roots(reduced);
    newton_polish(reduced, roots);
    if (!all_finite(roots)) throw RootFindingError("polynomial_roots: iteration did not converge");
  }
  roots.insert(roots.end(), zeros, Complex(0.0));
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace pincherle
