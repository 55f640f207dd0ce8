#include "gharm/impow_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gharm/ou_spectral.hpp"

namespace gharm {

void ImpowParams::validate() const {
  if (u == 0.0) throw std::invalid_argument("ImpowParams: u must be nonzero");
  if (!(r > 0.0)) throw std::invalid_argument("ImpowParams: r must be > 0");
  if (n != 1) throw std::invalid_argument("ImpowParams: only n = 1 supported");
}

std::complex<double> g_u_eval(double u, double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("g_u_eval: s must be in (0,1)");
  const double log_base = std::log((1.0 + s) / (1.0 - s));
  // positive real base: principal branch is elementary
  const double phase = -u * std::log(log_base);
  return std::complex<double>(std::cos(phase), std::sin(phase)) / log_base;
}

double f_a_eval(double a, double s) {
  if (!(a > 0.0 && s > 0.0)) throw std::invalid_argument("f_a_eval: a, s must be > 0");
  const double d = s - 1.0;
  return -a * d * d / (4.0 * s);
}

std::complex<double> gamma_complex(std::complex<double> z) {
  static const double kLanczos[9] = {
      0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
      771.32342877765313,     -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("gamma_complex: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return M_PI / (std::sin(M_PI * z) * gamma_complex(1.0 - z));
  }
  const std::complex<double> zm1 = z - 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (zm1 + double(i));
  const std::complex<double> t = zm1 + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, zm1 + 0.5) * std::exp(-t) * x;
}

namespace {

// Shared integrand of the s-representation:
//   amplitude(s) * exp(shift - (B s + A / s)/4) / ((1+s) sqrt(s)).
// For I(a, sigma): amplitude = g_u, A = a*sigma, B = a/sigma, shift = a/2
// (the expansion of F_a(s/sigma)).
struct SIntegrand {
  std::function<std::complex<double>(double)> amplitude;
  double A, B, shift;

  std::complex<double> operator()(double s) const {
    return amplitude(s) *
           std::exp(shift - 0.25 * (B * s + A / s)) /
           ((1.0 + s) * std::sqrt(s));
  }
};

// Lower cutoff: below s_lo the envelope exp(shift - A/(4s)) / (2 s^{3/2})
// is under cut_tol.
double lower_cutoff(double A, double shift, double cut_tol, double hi) {
  double m = shift - std::log(cut_tol) + 10.0;
  double s = A / (4.0 * m);
  for (int iter = 0; iter < 4; ++iter) {
    m = shift - std::log(cut_tol) + 1.5 * std::log(1.0 / std::max(s, 1e-300)) + 2.0;
    s = A / (4.0 * m);
  }
  return std::min(s, 0.5 * hi);
}

// Adaptive integral of an SIntegrand over (lo, hi) with the substitutions of
// the oscillatory design: w = log s on the lower piece, v = 1 - s near 1.
QuadResult integrate_s(const SIntegrand& f, double lo, double hi,
                       double abs_tol, std::size_t max_evals) {
  QuadResult total;
  const double cut_tol = abs_tol * 1e-4;
  double effective_lo = lo;
  if (lo <= 0.0) effective_lo = lower_cutoff(f.A, f.shift, cut_tol, hi);

  const double split_low = std::min(0.25, hi);
  const double split_high = std::min(0.9, hi);
  const std::size_t budget = max_evals / 3 + 1;

  auto accumulate = [&total](const QuadResult& piece) {
    total.value += piece.value;
    total.error += piece.error;
    total.evals += piece.evals;
    total.converged = total.converged && piece.converged;
  };

  if (effective_lo < split_low) {
    // oscillation is e^{-iu log log(2s)}-like: integrate in w = log s
    auto in_w = [&f](double w) {
      const double s = std::exp(w);
      return f(s) * s;
    };
    accumulate(integrate_adaptive(in_w, std::log(effective_lo),
                                  std::log(split_low), abs_tol / 3.0, budget));
    effective_lo = split_low;
  }
  if (effective_lo < split_high) {
    accumulate(integrate_adaptive([&f](double s) { return f(s); }, effective_lo,
                                  split_high, abs_tol / 3.0, budget));
    effective_lo = split_high;
  }
  if (effective_lo < hi) {
    // temper the logarithmic endpoint at s = 1
    auto in_v = [&f, hi](double v) { return f(hi - v); };
    accumulate(integrate_adaptive(in_v, 0.0, hi - effective_lo, abs_tol / 3.0,
                                  budget));
  }
  return total;
}

SIntegrand make_i_integrand(double u, double a, double sigma) {
  SIntegrand f;
  f.amplitude = [u](double s) { return g_u_eval(u, s); };
  f.A = a * sigma;
  f.B = a / sigma;
  f.shift = 0.5 * a;
  return f;
}

}  // namespace

QuadResult i_integral(double u, double a, double sigma, double abs_tol,
                      std::size_t max_evals) {
  if (!(a >= kIntegralAMin)) throw std::invalid_argument("i_integral: a below a_min");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("i_integral: sigma must be in (0,1)");
  return integrate_s(make_i_integrand(u, a, sigma), 0.0, 1.0, abs_tol, max_evals);
}

LemmaComponents lemma_components(double u, double a, double sigma,
                                 double abs_tol) {
  if (!(sigma > 0.0 && sigma <= 0.5))
    throw std::invalid_argument("lemma_components: sigma must be in (0, 1/2]");
  if (!(a >= 1.0)) throw std::invalid_argument("lemma_components: a must be >= 1");

  LemmaComponents out;
  const SIntegrand base = make_i_integrand(u, a, sigma);

  const QuadResult i_full = integrate_s(base, 0.0, 1.0, abs_tol, 200000);
  out.i_value = i_full.value;
  out.error += i_full.error;

  // J(a, sigma) = g_u(sigma) \int_{sigma/2}^{2/3} e^{F}/(1+s) ds/sqrt(s)
  SIntegrand j_integrand = base;
  j_integrand.amplitude = [](double) { return std::complex<double>(1.0, 0.0); };
  const QuadResult j_inner =
      integrate_s(j_integrand, sigma / 2.0, 2.0 / 3.0, abs_tol, 200000);
  out.j_value = g_u_eval(u, sigma) * j_inner.value;
  out.error += j_inner.error;

  const QuadResult h1 = integrate_s(base, 0.0, sigma / 2.0, abs_tol, 200000);
  out.h1 = h1.value;
  out.error += h1.error;

  const QuadResult h2 = integrate_s(base, 2.0 / 3.0, 1.0, abs_tol, 200000);
  out.h2 = h2.value;
  out.error += h2.error;

  SIntegrand h3_integrand = base;
  const std::complex<double> g_at_sigma = g_u_eval(u, sigma);
  h3_integrand.amplitude = [u, g_at_sigma](double s) {
    return g_u_eval(u, s) - g_at_sigma;
  };
  const QuadResult h3 =
      integrate_s(h3_integrand, sigma / 2.0, 2.0 / 3.0, abs_tol, 200000);
  out.h3 = h3.value;
  out.error += h3.error;

  out.h_value = out.h1 + out.h2 + out.h3;
  return out;
}

KernelValue kernel_quadrature(const ImpowParams& p, double x, double y,
                              double abs_tol, std::size_t max_evals) {
  p.validate();
  if (x == y) throw std::domain_error("kernel_quadrature: x == y");
  const std::complex<double> norm =
      1.0 / gamma_complex(std::complex<double>(0.0, -p.u));

  // The kernel scales like exp(min(x^2, y^2)); keep the requested tolerance
  // relative to that scale so far-field evaluations stay affordable.
  const double scale = std::exp(std::min(x * x, y * y));
  abs_tol *= scale;
  const double cut_tol = abs_tol * 1e-4;
  auto magnitude = [&](double t) {
    return mehler_eval_asymmetric(t, x, y) * std::exp(-p.r * t) / t;
  };
  double t_lo = std::min(1.0, 0.25 * (x - y) * (x - y));
  while (magnitude(t_lo) > cut_tol && t_lo > 1e-14) t_lo *= 0.5;
  t_lo *= 0.25;
  const double t_hi = std::max(2.0, (-std::log(cut_tol) + 50.0) / p.r);

  auto integrand = [&](double t) {
    // t^{-iu-1} e^{-rt} h_t(x,y); positive real base for the complex power
    const double phase = -p.u * std::log(t);
    const std::complex<double> osc(std::cos(phase), std::sin(phase));
    return osc / t * std::exp(-p.r * t) * mehler_eval_asymmetric(t, x, y);
  };

  KernelValue out;
  out.route = KernelRoute::Quadrature;
  // log-variable piece near t = 0 where the Gaussian cutoff lives
  auto in_w = [&](double w) {
    const double t = std::exp(w);
    return integrand(t) * t;
  };
  const QuadResult low = integrate_adaptive(in_w, std::log(t_lo), 0.0,
                                            abs_tol / 2.0, max_evals / 2);
  const QuadResult high = integrate_adaptive(integrand, 1.0, t_hi,
                                             abs_tol / 2.0, max_evals / 2);
  out.value = norm * (low.value + high.value);
  out.error = std::abs(norm) * (low.error + high.error);
  out.converged = low.converged && high.converged;
  return out;
}

KernelValue kernel_closed_form_1d(const ImpowParams& p, double x, double y,
                                  double abs_tol, std::size_t max_evals) {
  p.validate();
  if (p.r != 1.0)
    throw std::invalid_argument("kernel_closed_form_1d: requires r = 1");
  if (x == y || x == -y)
    throw std::domain_error("kernel_closed_form_1d: x == +-y");
  const std::complex<double> norm =
      1.0 / gamma_complex(std::complex<double>(0.0, -p.u));

  // e^{y^2} I(a, sigma) with the signed convention a = x^2 - y^2,
  // sigma = (x-y)/(x+y); in expanded form a*sigma = (x-y)^2,
  // a/sigma = (x+y)^2 and the total shift is y^2 + a/2 = (x^2+y^2)/2.
  SIntegrand f;
  f.amplitude = [u = p.u](double s) { return g_u_eval(u, s); };
  f.A = (x - y) * (x - y);
  f.B = (x + y) * (x + y);
  f.shift = 0.5 * (x * x + y * y);

  const double scale = std::exp(std::min(x * x, y * y));
  const QuadResult q = integrate_s(f, 0.0, 1.0, abs_tol * scale, max_evals);
  KernelValue out;
  out.route = KernelRoute::ClosedForm;
  out.value = norm * q.value;
  out.error = std::abs(norm) * q.error;
  out.converged = q.converged;
  return out;
}

}  // namespace gharm
