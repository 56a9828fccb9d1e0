#include "pincherle/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace pincherle {
namespace {

// QUADPACK qk15 abscissae (Kronrod), Gauss points are the odd indices.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double error;
  double abs_value;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const std::function<Complex(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = f(center);
  Complex kronrod = fc * kKronrodWeights[7];
  Complex gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(fc) * kKronrodWeights[7];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const Complex f1 = f(center - dx);
    const Complex f2 = f(center + dx);
    kronrod += (f1 + f2) * kKronrodWeights[i];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kKronrodWeights[i];
    if (i % 2 == 1) gauss += (f1 + f2) * kGaussWeights[i / 2];
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace

QuadratureResult gauss_kronrod(const std::function<Complex(double)>& f, double a, double b,
                               const QuadratureOptions& options) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel> heap;
  QuadratureResult result;
  const std::size_t panels = std::max<std::size_t>(1, options.initial_panels);
  const double width = (b - a) / static_cast<double>(panels);
  Complex total = 0.0;
  double error = 0.0;
  double abs_total = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == panels ? b : lo + width;
    Panel p = kronrod_panel(f, lo, hi);
    total += p.value;
    error += p.error;
    abs_total += p.abs_value;
    heap.push(p);
  }
  result.evaluations = 15 * panels;

  const auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };
  const auto rounding_floor = [&] { return 50.0 * kEps * abs_total; };

  while (error > target() && error > rounding_floor()) {
    if (result.evaluations + 30 > options.max_evaluations) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval no longer splittable
    heap.pop();
    const Panel left = kronrod_panel(f, worst.a, mid);
    const Panel right = kronrod_panel(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  abs_total = 0.0;
  std::vector<Panel> final_panels;
  while (!heap.empty()) {
    final_panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(final_panels.begin(), final_panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : final_panels) {
    total += p.value;
    error += p.error;
    abs_total += p.abs_value;
  }
  result.value = total;
  result.abs_integral = abs_total;
  result.error = error + rounding_floor();
  result.converged = error <= target() || error <= rounding_floor();
  return result;
}

}  // namespace pincherle
