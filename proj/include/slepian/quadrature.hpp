#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "slepian/errors.hpp"

namespace slepian::quadrature {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 40;
  // Lower-tail truncation radius in effective standard deviations.
  double trunc_radius = 12.0;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1], positive abscissae in descending
// order; odd indices are the embedded Gauss-7 nodes.
inline constexpr double kKronNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double resabs;
  int depth;
};

// Heap comparator: the panel with the largest error sits on top; ties break
// deterministically on interval position.
struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

template <class F>
inline Panel evaluate_panel(F&& f, double a, double b, int depth) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  double res_k = fc * kKronWeights[7];
  double res_g = fc * kGaussWeights[3];
  double res_abs = std::abs(fc) * kKronWeights[7];
  for (int i = 0; i < 7; ++i) {
    double dx = h * kKronNodes[i];
    double f1 = f(c - dx);
    double f2 = f(c + dx);
    res_k += (f1 + f2) * kKronWeights[i];
    res_abs += (std::abs(f1) + std::abs(f2)) * kKronWeights[i];
    if (i % 2 == 1) res_g += (f1 + f2) * kGaussWeights[i / 2];
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = res_k * h;
  p.error = std::abs((res_k - res_g) * h);
  p.resabs = res_abs * h;
  p.depth = depth;
  return p;
}

inline bool roundoff_limited(const Panel& p) {
  return p.error <= 50.0 * std::numeric_limits<double>::epsilon() * p.resabs;
}

}  // namespace detail

// Globally adaptive integration of f over the finite interval [lo, hi].
// The worst panel (by local error estimate) is bisected until the summed
// error estimate meets max(abs_tol, rel_tol * |integral|). Throws
// ConvergenceError naming the worst subinterval when max_depth is hit.
// Fully deterministic: fixed evaluation points, fixed refinement order,
// final sum taken left to right.
template <class F>
QuadResult integrate_1d(F&& f, double lo, double hi,
                        const QuadratureSpec& spec = {}) {
  if (!(std::isfinite(lo) && std::isfinite(hi)))
    throw DomainError("integrate_1d: endpoints must be finite");
  if (!(lo < hi)) throw DomainError("integrate_1d: need lo < hi");

  std::vector<detail::Panel> heap;
  detail::PanelWorse worse;
  heap.push_back(detail::evaluate_panel(f, lo, hi, 0));
  long long evaluations = 15;
  double sum_value = heap[0].value;
  double sum_error = heap[0].error;

  for (;;) {
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(sum_value));
    if (sum_error <= tol) break;
    std::pop_heap(heap.begin(), heap.end(), worse);
    detail::Panel top = heap.back();
    if (detail::roundoff_limited(top)) {
      std::push_heap(heap.begin(), heap.end(), worse);
      break;
    }
    if (top.depth >= spec.max_depth)
      throw ConvergenceError(top.a, top.b, top.error);
    heap.pop_back();
    double mid = 0.5 * (top.a + top.b);
    detail::Panel left = detail::evaluate_panel(f, top.a, mid, top.depth + 1);
    detail::Panel right = detail::evaluate_panel(f, mid, top.b, top.depth + 1);
    evaluations += 30;
    sum_value += left.value + right.value - top.value;
    sum_error += left.error + right.error - top.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  // Re-sum left to right for a stable, accurate final answer.
  std::sort(heap.begin(), heap.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  QuadResult out;
  for (const detail::Panel& p : heap) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  out.evaluations = evaluations;
  return out;
}

// Integral of f over (-infinity, hi] for integrands carrying a Gaussian
// factor of scale sigma_eff centered at zero. The domain is cut to
// [min(hi, 0) - R * sigma_eff, min(hi, R * sigma_eff)] with R the
// truncation radius; clamping the upper end keeps a narrow mass centered
// in the first panel instead of at its far edge, where every Kronrod node
// could miss it and fake convergence.
template <class F>
QuadResult integrate_lower_tail(F&& f, double hi, const QuadratureSpec& spec = {},
                                double sigma_eff = 1.0) {
  if (!std::isfinite(hi)) throw DomainError("integrate_lower_tail: hi must be finite");
  if (!(sigma_eff > 0.0))
    throw DomainError("integrate_lower_tail: sigma_eff must be positive");
  double hi_eff = std::min(hi, spec.trunc_radius * sigma_eff);
  double lo = std::min(hi_eff, 0.0) - spec.trunc_radius * sigma_eff;
  return integrate_1d(std::forward<F>(f), lo, hi_eff, spec);
}

// Nested 2-D integral of f(x, y) over x in (-infinity, outer_hi],
// y in (-infinity, inner_hi(x)]. The inner pass runs at a tenth of the
// requested tolerances; the reported error estimate is the outer estimate
// plus the worst inner estimate.
template <class F, class H>
QuadResult integrate_2d_nested(F&& f, double outer_hi, H&& inner_hi,
                               const QuadratureSpec& spec = {},
                               double outer_sigma_eff = 1.0,
                               double inner_sigma_eff = 1.0) {
  QuadratureSpec inner_spec = spec;
  inner_spec.abs_tol /= 10.0;
  inner_spec.rel_tol /= 10.0;
  double worst_inner_error = 0.0;
  long long inner_evaluations = 0;
  auto outer_integrand = [&](double x) {
    double hi_y = inner_hi(x);
    QuadResult inner = integrate_lower_tail(
        [&](double y) { return f(x, y); }, hi_y, inner_spec, inner_sigma_eff);
    worst_inner_error = std::max(worst_inner_error, inner.error_estimate);
    inner_evaluations += inner.evaluations;
    return inner.value;
  };
  QuadResult out = integrate_lower_tail(outer_integrand, outer_hi, spec, outer_sigma_eff);
  out.error_estimate += worst_inner_error;
  out.evaluations += inner_evaluations;
  return out;
}

}  // namespace slepian::quadrature
