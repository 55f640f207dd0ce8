#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace gharm {

/// Physicists' Hermite polynomial H_j(x), three-term recurrence.
double hermite_eval(int j, double x);

/// 2^j j! = \int H_j^2 dgamma. Throws std::range_error past the double range.
double hermite_norm_sq(int j);

/// Orthonormal family h_j = H_j / sqrt(2^j j!) via a scaled recurrence that
/// stays representable for large j.
double hermite_orthonormal_eval(int j, double x);

/// max over the grid of |(-1/2 H_j'' + x H_j') - j H_j| using the exact
/// derivative recurrences H_j' = 2j H_{j-1}, H_j'' = 4j(j-1) H_{j-2}.
double eigen_residual(int j, const std::vector<double>& grid);

/// Finite Hermite expansion of an L^2(gamma) function: coefficients relative
/// to the orthonormal family, so ||f||_2^2 = sum |c_j|^2 exactly.
struct SpectralFunction {
  std::vector<std::complex<double>> coeff;

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  double l2_norm() const;
  std::complex<double> eval(double x) const;
};

SpectralFunction project(const SpectralFunction& f, int j);

/// Spectral multiplier j -> m(j) with a declared sup bound.
struct Multiplier {
  std::function<std::complex<double>(int)> m;
  double sup_bound = 1.0;

  /// M_u: 0 at j = 0, j^{iu} for j >= 1.
  static Multiplier imaginary_power(double u);
  /// (j + r)^{iu}, r > 0.
  static Multiplier shifted_imaginary_power(double u, double r);
};

SpectralFunction apply_multiplier(const Multiplier& m, const SpectralFunction& f);

/// Gauss-Hermite rule rescaled to gamma: sum w_k g(x_k) ~ \int g dgamma.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch on the Jacobi matrix of the gamma-orthonormal family.
QuadratureGrid gauss_hermite_gamma(int m);

/// Hermite coefficients of f up to degree max_degree, by Gauss-Hermite
/// quadrature of order >= 2*max_degree + 1.
SpectralFunction expand(const std::function<double(double)>& f, int max_degree,
                        int quad_order = 0);

/// Mehler kernel h_t(x, y) of e^{-tL} w.r.t. gamma, n = 1. Evaluated through
/// the symmetric exponent (x^2+y^2)/2 - ((x-y)^2/s + s(x+y)^2)/4 with
/// s = (1 - e^{-t})/(1 + e^{-t}).
double mehler_eval(double t, double x, double y);

/// Same kernel through the asymmetric exponent y^2 - (e^{-t}x - y)^2/(1-e^{-2t});
/// kept as an algebraically distinct route for cross-checks.
double mehler_eval_asymmetric(double t, double x, double y);

/// Substituted kernel: equals mehler_eval at t = log((1+s)/(1-s)), s in (0,1).
double mehler_substituted_eval(double s, double x, double y);

/// Truncated eigenfunction series sum_j e^{-tj} h_j(x) h_j(y) with a certified
/// geometric tail bound (Cramer's inequality |h_j(x)| < K e^{x^2/2}).
/// Summed internally in 50-digit arithmetic: the terms reach e^{(x^2+y^2)/2}
/// while the sum can be exponentially small, so double partial sums lose
/// everything to cancellation at far (x, y).
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
  bool converged = true;
};
SeriesValue mehler_series_eval(double t, double x, double y, int truncation);
/// Truncation chosen adaptively from the tail bound; hard cap J = 1024.
SeriesValue mehler_series_eval_adaptive(double t, double x, double y, double tol);

/// Quadrature check of e^{-t1 L} e^{-t2 L} = e^{-(t1+t2) L}:
/// sum_k w_k h_t1(x, x_k) h_t2(x_k, y), to be compared with h_{t1+t2}(x, y).
double semigroup_compose(double t1, double t2, const QuadratureGrid& grid,
                         double x, double y);

}  // namespace gharm
