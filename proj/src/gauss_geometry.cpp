#include "gharm/gauss_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gharm/quadrature.hpp"

namespace gharm {

double GaussBall::center_norm() const {
  double s = 0.0;
  for (double c : center) s += c * c;
  return std::sqrt(s);
}

double maximal_radius(double center_norm) {
  if (center_norm <= 1.0) return 1.0;
  return 1.0 / center_norm;
}

bool is_admissible(const GaussBall& ball) {
  return ball.radius > 0.0 && ball.radius <= maximal_radius(ball.center_norm());
}

bool is_maximal(const GaussBall& ball) {
  return ball.radius == maximal_radius(ball.center_norm());
}

GaussBall maximal_ball(double y) {
  return GaussBall(y, maximal_radius(std::abs(y)));
}

double gauss_measure_interval(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("gauss_measure: lo > hi");
  if (lo == hi) return 0.0;
  // erf differences cancel catastrophically in the far tails; switch to erfc
  // when both endpoints share a sign.
  if (lo >= 0.0) return 0.5 * (std::erfc(lo) - std::erfc(hi));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi) - std::erfc(-lo));
  return 0.5 * (std::erf(hi) + std::erf(-lo));
}

double gauss_measure_union(const std::vector<Interval>& pieces) {
  std::vector<Interval> sorted = pieces;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i].lo < sorted[i - 1].hi)
      throw std::invalid_argument("gauss_measure_union: overlapping pieces");
    total += gauss_measure_interval(sorted[i].lo, sorted[i].hi);
  }
  return total;
}

namespace {

// Recursive tensor quadrature for n >= 2 balls: slice along the first
// coordinate and reduce to an (n-1)-dimensional ball measure.
double ball_measure_nd(const std::vector<double>& center, double radius) {
  if (center.size() == 1)
    return gauss_measure_interval(center[0] - radius, center[0] + radius);
  const GaussLegendreRule& rule = gauss_legendre(64);
  const std::vector<double> rest(center.begin() + 1, center.end());
  const double c1 = center[0];
  double total = 0.0;
  // substitute x1 = c1 + R sin(theta): removes the sqrt edge singularity of
  // the slice radius, restoring spectral accuracy
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double theta = 0.5 * M_PI * rule.nodes[k];
    const double x1 = c1 + radius * std::sin(theta);
    const double slice_r = radius * std::cos(theta);
    const double density = std::exp(-x1 * x1) / std::sqrt(M_PI);
    total += rule.weights[k] * (0.5 * M_PI) * slice_r * density *
             (slice_r > 0.0 ? ball_measure_nd(rest, slice_r) : 0.0);
  }
  return total;
}

}  // namespace

double gauss_measure_ball(const GaussBall& ball) {
  if (ball.radius <= 0.0) throw std::invalid_argument("ball radius must be > 0");
  if (ball.dim() == 1)
    return gauss_measure_interval(ball.c1() - ball.radius, ball.c1() + ball.radius);
  return ball_measure_nd(ball.center, ball.radius);
}

double scaled_gauss_integral(const std::vector<double>& nodes_unit,
                             const std::vector<double>& weights_unit,
                             double lo, double hi, double cref,
                             const std::function<double(double)>& g) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double total = 0.0;
  for (std::size_t k = 0; k < nodes_unit.size(); ++k) {
    const double x = mid + half * nodes_unit[k];
    total += weights_unit[k] * g(x) * std::exp(-(x - cref) * (x + cref));
  }
  return total * half / std::sqrt(M_PI);
}

DoublingReport doubling_ratio_scan(const std::vector<double>& centers,
                                   const std::vector<double>& radii_fractions) {
  DoublingReport report;
  for (double c : centers) {
    for (double frac : radii_fractions) {
      const double r = frac * maximal_radius(std::abs(c));
      GaussBall ball(c, r);
      if (!is_admissible(ball))
        throw std::invalid_argument("doubling_ratio_scan: non-admissible ball");
      const double small = gauss_measure_interval(c - r, c + r);
      const double big = gauss_measure_interval(c - 2 * r, c + 2 * r);
      report.rows.push_back({c, r, big / small});
    }
  }
  for (const DoublingRow& row : report.rows)
    report.max_ratio = std::max(report.max_ratio, row.ratio);
  return report;
}

double boundary_shell_ratio(const ShellSpec& shell) {
  if (!(shell.kappa > 0.0 && shell.kappa <= kShellKappaMax))
    throw std::invalid_argument("kappa outside (0, kappa_max]");
  double measure_a = 0.0;
  double measure_shell = 0.0;
  for (const Interval& piece : shell.base) {
    if (!(piece.lo < piece.hi))
      throw std::invalid_argument("boundary_shell_ratio: empty interval");
    if (std::max(std::abs(piece.lo), std::abs(piece.hi)) >= 1e300)
      throw std::invalid_argument("boundary_shell_ratio: A must be bounded");
    // Every piece must lie entirely outside the ball B_0 = (-b0, b0).
    if (!(piece.lo >= kShellB0 || piece.hi <= -kShellB0))
      throw std::invalid_argument("boundary_shell_ratio: A intersects B_0");

    double a = piece.lo, b = piece.hi;
    const bool mirrored = b <= -kShellB0;
    if (mirrored) {  // reflect to the positive axis; gamma is symmetric
      std::swap(a, b);
      a = -a;
      b = -b;
    }
    measure_a += gauss_measure_interval(a, b);

    // Inside (a, b) with a >= b0 > 0: d(x, A^c) = min(x - a, b - x); the
    // condition min(...) <= kappa/x splits into two exact quadratic cuts.
    const double kappa = shell.kappa;
    // x - a <= kappa/x  <=>  x <= (a + sqrt(a^2 + 4 kappa)) / 2
    const double x_left = 0.5 * (a + std::sqrt(a * a + 4.0 * kappa));
    // b - x <= kappa/x  <=>  x >= (b + sqrt(b^2 - 4 kappa)) / 2
    const double disc = b * b - 4.0 * kappa;
    const double x_right = disc >= 0.0
                               ? 0.5 * (b + std::sqrt(disc))
                               : a;  // whole interval qualifies from the right
    if (x_left >= x_right) {
      measure_shell += gauss_measure_interval(a, b);  // shell saturates A
    } else {
      measure_shell += gauss_measure_interval(a, std::min(x_left, b));
      measure_shell += gauss_measure_interval(std::max(x_right, a), b);
    }
  }
  return measure_shell / (shell.kappa * measure_a);
}

double rho_prime_distance_1d(double x, double y) {
  auto antiderivative = [](double t) {
    return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t));
  };
  return std::abs(antiderivative(y) - antiderivative(x));
}

}  // namespace gharm
