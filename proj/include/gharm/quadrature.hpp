#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace gharm {

/// Result of an adaptive quadrature run. `error` is the accumulated
/// Gauss-Kronrod error estimate; `converged` is false when the node budget
/// ran out before the estimate dropped below the requested tolerance.
struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  std::size_t evals = 0;
  bool converged = true;

  double real() const { return value.real(); }
};

/// Adaptive Gauss7/Kronrod15 bisection on [a, b] for a complex-valued
/// integrand. Deterministic: the refinement order depends only on the
/// integrand values, never on thread count or timing.
QuadResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                              double a, double b, double abs_tol,
                              std::size_t max_evals = 200000);

/// Real-valued convenience wrapper.
QuadResult integrate_adaptive_real(const std::function<double(double)>& f,
                                   double a, double b, double abs_tol,
                                   std::size_t max_evals = 200000);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on the Legendre recurrence; cached per order.
const GaussLegendreRule& gauss_legendre(int n);

}  // namespace gharm
