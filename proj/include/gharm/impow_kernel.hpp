#pragma once

#include <complex>

#include "gharm/quadrature.hpp"

namespace gharm {

/// Parameters of the imaginary power (rI + L)^{iu}.
struct ImpowParams {
  double u = 1.0;  // nonzero exponent
  double r = 1.0;  // positive spectral shift
  int n = 1;       // dimension; 1 throughout v1

  void validate() const;
};

enum class KernelRoute { Quadrature, ClosedForm, SpectralAction };

/// Complex kernel value with a propagated absolute-error estimate.
struct KernelValue {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  KernelRoute route = KernelRoute::Quadrature;
  bool converged = true;
};

/// g_u(s) = [log((1+s)/(1-s))]^{-iu-1}, principal branch of a positive base.
std::complex<double> g_u_eval(double u, double s);

/// F_a(s) = -a (s-1)^2 / (4s); <= 0 with equality only at s = 1.
double f_a_eval(double a, double s);

/// Gamma function on C via Lanczos with reflection for Re z < 1/2.
std::complex<double> gamma_complex(std::complex<double> z);

inline constexpr double kIntegralAMin = 1e-6;

/// I(a, sigma) = \int_0^1 g_u(s) e^{F_a(s/sigma)} / (1+s) ds / sqrt(s),
/// adaptive with a log substitution near s = 0 and v = 1-s near s = 1.
QuadResult i_integral(double u, double a, double sigma, double abs_tol = 1e-10,
                      std::size_t max_evals = 200000);

/// J, H and the H1/H2/H3 split used in the lower-bound lemma for I(a, sigma).
struct LemmaComponents {
  std::complex<double> i_value, j_value, h_value, h1, h2, h3;
  double error = 0.0;  // summed quadrature error across the pieces
};
LemmaComponents lemma_components(double u, double a, double sigma,
                                 double abs_tol = 1e-10);

/// Kernel of (rI+L)^{iu} by direct adaptive quadrature of
/// N(u) \int_0^inf t^{-iu-1} e^{-rt} h_t(x,y) dt with N(u) = 1/Gamma(-iu)
/// (the normalization fixed by the spectral action of (j+r)^{iu}).
KernelValue kernel_quadrature(const ImpowParams& p, double x, double y,
                              double abs_tol = 1e-10,
                              std::size_t max_evals = 200000);

/// Closed 1-D form (r = 1): N(u) e^{y^2} I(x^2 - y^2, (x-y)/(x+y)) with the
/// signed parameter convention; evaluated through the expanded exponent
/// (x^2+y^2)/2 - (s (x+y)^2 + (x-y)^2/s)/4, which is what the signed
/// substitution produces.
KernelValue kernel_closed_form_1d(const ImpowParams& p, double x, double y,
                                  double abs_tol = 1e-10,
                                  std::size_t max_evals = 200000);

}  // namespace gharm
