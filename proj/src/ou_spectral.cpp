#include "gharm/ou_spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace gharm {

double hermite_eval(int j, double x) {
  if (j < 0) throw std::invalid_argument("hermite_eval: j < 0");
  double h0 = 1.0;
  if (j == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < j; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double hermite_norm_sq(int j) {
  if (j < 0) throw std::invalid_argument("hermite_norm_sq: j < 0");
  // 2^j j!; lgamma keeps the overflow test exact enough.
  const double log_value = j * std::log(2.0) + std::lgamma(j + 1.0);
  if (log_value > std::log(std::numeric_limits<double>::max()))
    throw std::range_error("hermite_norm_sq: overflow");
  double value = 1.0;
  for (int k = 1; k <= j; ++k) value *= 2.0 * k;
  return value;
}

double hermite_orthonormal_eval(int j, double x) {
  if (j < 0) throw std::invalid_argument("hermite_orthonormal_eval: j < 0");
  double h0 = 1.0;
  if (j == 0) return h0;
  double h1 = std::sqrt(2.0) * x;
  for (int k = 1; k < j; ++k) {
    const double h2 = std::sqrt(2.0 / (k + 1.0)) * x * h1 -
                      std::sqrt(k / (k + 1.0)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double eigen_residual(int j, const std::vector<double>& grid) {
  if (j < 1) throw std::invalid_argument("eigen_residual: j >= 1 required");
  double worst = 0.0;
  for (double x : grid) {
    const double h = hermite_eval(j, x);
    const double dh = 2.0 * j * hermite_eval(j - 1, x);
    const double d2h = j >= 2 ? 4.0 * j * (j - 1.0) * hermite_eval(j - 2, x) : 0.0;
    worst = std::max(worst, std::abs(-0.5 * d2h + x * dh - j * h));
  }
  return worst;
}

double SpectralFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeff) s += std::norm(c);
  return std::sqrt(s);
}

std::complex<double> SpectralFunction::eval(double x) const {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t j = 0; j < coeff.size(); ++j)
    s += coeff[j] * hermite_orthonormal_eval(static_cast<int>(j), x);
  return s;
}

SpectralFunction project(const SpectralFunction& f, int j) {
  SpectralFunction out;
  out.coeff.assign(f.coeff.size(), {0.0, 0.0});
  if (j >= 0 && j < static_cast<int>(f.coeff.size())) out.coeff[j] = f.coeff[j];
  return out;
}

Multiplier Multiplier::imaginary_power(double u) {
  Multiplier mult;
  mult.sup_bound = 1.0;
  mult.m = [u](int j) -> std::complex<double> {
    if (j == 0) return {0.0, 0.0};
    return std::exp(std::complex<double>(0.0, u * std::log(double(j))));
  };
  return mult;
}

Multiplier Multiplier::shifted_imaginary_power(double u, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("shifted_imaginary_power: r must be > 0");
  Multiplier mult;
  mult.sup_bound = 1.0;
  mult.m = [u, r](int j) {
    return std::exp(std::complex<double>(0.0, u * std::log(j + r)));
  };
  return mult;
}

SpectralFunction apply_multiplier(const Multiplier& m, const SpectralFunction& f) {
  SpectralFunction out = f;
  for (std::size_t j = 0; j < out.coeff.size(); ++j)
    out.coeff[j] *= m.m(static_cast<int>(j));
  return out;
}

QuadratureGrid gauss_hermite_gamma(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite_gamma: order >= 1");
  // Jacobi matrix of the gamma-orthonormal Hermite family:
  // x p_j = sqrt((j+1)/2) p_{j+1} + sqrt(j/2) p_{j-1}.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j + 1 < m; ++j) {
    const double b = std::sqrt((j + 1) / 2.0);
    jac(j, j + 1) = b;
    jac(j + 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac);
  QuadratureGrid grid;
  grid.nodes.resize(m);
  grid.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    const double x = solver.eigenvalues()(k);
    grid.nodes[k] = x;
    // Christoffel number via the orthonormal family; already normalized so
    // the weights sum to gamma(R) = 1.
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
      const double p = hermite_orthonormal_eval(j, x);
      s += p * p;
    }
    grid.weights[k] = 1.0 / s;
  }
  return grid;
}

SpectralFunction expand(const std::function<double(double)>& f, int max_degree,
                        int quad_order) {
  if (quad_order <= 0) quad_order = 2 * max_degree + 16;
  const QuadratureGrid grid = gauss_hermite_gamma(quad_order);
  SpectralFunction out;
  out.coeff.assign(max_degree + 1, {0.0, 0.0});
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    const double fx = f(grid.nodes[k]);
    for (int j = 0; j <= max_degree; ++j)
      out.coeff[j] += grid.weights[k] * fx *
                      hermite_orthonormal_eval(j, grid.nodes[k]);
  }
  return out;
}

double mehler_eval(double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("mehler_eval: t must be > 0");
  const double emt = std::exp(-t);
  const double s = (1.0 - emt) / (1.0 + emt);
  const double prefactor = (1.0 + s) / (2.0 * std::sqrt(s));
  const double exponent = 0.5 * (x * x + y * y) -
                          0.25 * ((x - y) * (x - y) / s + s * (x + y) * (x + y));
  return prefactor * std::exp(exponent);
}

double mehler_eval_asymmetric(double t, double x, double y) {
  if (!(t > 0.0)) throw std::domain_error("mehler_eval_asymmetric: t must be > 0");
  const double emt = std::exp(-t);
  const double one_minus = 1.0 - emt * emt;
  const double d = emt * x - y;
  return std::exp(y * y - d * d / one_minus) / std::sqrt(one_minus);
}

double mehler_substituted_eval(double s, double x, double y) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("mehler_substituted_eval: s must be in (0,1)");
  const double prefactor = (1.0 + s) / (2.0 * std::sqrt(s));
  const double exponent = 0.5 * (x * x + y * y) -
                          0.25 * (s * (x + y) * (x + y) + (x - y) * (x - y) / s);
  return prefactor * std::exp(exponent);
}

namespace {
// Cramer's bound |H_j(x)| < K 2^{j/2} sqrt(j!) e^{x^2/2}.
constexpr double kCramer = 1.086435;
using big_float = boost::multiprecision::cpp_bin_float_50;
}  // namespace

SeriesValue mehler_series_eval(double t, double x, double y, int truncation) {
  if (!(t > 0.0)) throw std::domain_error("mehler_series_eval: t must be > 0");
  if (truncation < 0) throw std::invalid_argument("mehler_series_eval: J < 0");
  SeriesValue out;
  // Summed in 50-digit arithmetic: the partial sums cancel down to
  // exp(-(x-y)^2/(2t))-scale values from O(e^{(x^2+y^2)/2}) terms, which
  // doubles cannot survive at the far corners of the test grids.
  const big_float q = exp(big_float(-t));
  big_float sum = 0, qj = 1;
  big_float h0 = 1, h1 = sqrt(big_float(2)) * x;
  big_float g0 = 1, g1 = sqrt(big_float(2)) * y;
  for (int j = 0; j <= truncation; ++j) {
    const big_float hx = (j == 0) ? h0 : h1;
    const big_float hy = (j == 0) ? g0 : g1;
    sum += qj * hx * hy;
    qj *= q;
    if (j >= 1) {
      const big_float sa = sqrt(big_float(2) / (j + 1));
      const big_float sb = sqrt(big_float(j) / (j + 1));
      const big_float h2 = sa * x * h1 - sb * h0;
      const big_float g2 = sa * y * g1 - sb * g0;
      h0 = h1; h1 = h2;
      g0 = g1; g1 = g2;
    }
  }
  out.value = static_cast<double>(sum);
  out.terms = truncation + 1;
  const double qd = std::exp(-t);
  out.tail_bound = kCramer * kCramer * std::exp(0.5 * (x * x + y * y)) *
                   std::pow(qd, truncation + 1) / (1.0 - qd);
  return out;
}

SeriesValue mehler_series_eval_adaptive(double t, double x, double y, double tol) {
  constexpr int kCap = 1024;
  const double q = std::exp(-t);
  const double envelope = kCramer * kCramer * std::exp(0.5 * (x * x + y * y));
  // smallest J with certified tail <= tol: envelope q^{J+1}/(1-q) <= tol
  int truncation = kCap;
  const double need = std::log(tol * (1.0 - q) / envelope);
  if (need < 0.0) {
    const double j_est = need / std::log(q) - 1.0;
    truncation = std::min(kCap, std::max(0, static_cast<int>(std::ceil(j_est))));
  } else {
    truncation = 0;
  }
  SeriesValue out = mehler_series_eval(t, x, y, truncation);
  out.converged = out.tail_bound <= tol;
  return out;
}

double semigroup_compose(double t1, double t2, const QuadratureGrid& grid,
                         double x, double y) {
  if (!(t1 > 0.0 && t2 > 0.0))
    throw std::domain_error("semigroup_compose: times must be > 0");
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.nodes.size(); ++k)
    sum += grid.weights[k] * mehler_eval(t1, x, grid.nodes[k]) *
           mehler_eval(t2, grid.nodes[k], y);
  return sum;
}

}  // namespace gharm
