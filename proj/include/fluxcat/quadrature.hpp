#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "fluxcat/errors.hpp"

namespace fluxcat::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computes an n-point rule by Newton iteration on P_n.
GaussLegendreRule make_gauss_legendre(int n);

/// Shared 16-point rule used by the panel integrators.
const GaussLegendreRule& gauss_legendre_16();

template <class F>
auto gauss_panel(const F& f, double a, double b) {
  const auto& rule = gauss_legendre_16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  using R = decltype(f(a));
  R sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return R(sum * half);
}

template <class R>
struct QuadratureResult {
  R value{};
  double error_estimate = 0.0;
};

namespace detail {

template <class F, class R>
void adaptive_step(const F& f, double a, double b, R whole, double tol, int depth,
                   QuadratureResult<R>& out, bool& failed) {
  const double mid = 0.5 * (a + b);
  const R left = gauss_panel(f, a, mid);
  const R right = gauss_panel(f, mid, b);
  const double diff = std::abs(left + right - whole);
  if (diff <= tol || depth == 0 || mid == a || mid == b) {
    if (diff > tol) failed = true;
    out.value += left + right;
    out.error_estimate += diff;
    return;
  }
  adaptive_step(f, a, mid, left, 0.5 * tol, depth - 1, out, failed);
  adaptive_step(f, mid, b, right, 0.5 * tol, depth - 1, out, failed);
}

}  // namespace detail

/// Adaptive Gauss-Legendre with recursive bisection. Throws NumericalError
/// (carrying the accumulated error estimate) when the depth budget runs out.
template <class F>
auto integrate_adaptive(const F& f, double a, double b, double abs_tol = 1e-12,
                        int max_depth = 48) {
  using R = decltype(f(a));
  QuadratureResult<R> out;
  if (a == b) return out;
  bool failed = false;
  detail::adaptive_step(f, a, b, gauss_panel(f, a, b), abs_tol, max_depth, out, failed);
  if (failed) {
    throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(a) +
                             ", " + std::to_string(b) + "]",
                         out.error_estimate);
  }
  return out;
}

/// Integrates over [a, b], never letting a panel straddle a breakpoint.
template <class F>
auto integrate_piecewise(const F& f, double a, double b, std::span<const double> breakpoints,
                         double abs_tol = 1e-12) {
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using R = decltype(f(a));
  QuadratureResult<R> total;
  const double span_len = b - a;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double share = span_len > 0 ? (cuts[i + 1] - cuts[i]) / span_len : 1.0;
    auto part = integrate_adaptive(f, cuts[i], cuts[i + 1], abs_tol * share);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
  }
  return total;
}

}  // namespace fluxcat::quad
