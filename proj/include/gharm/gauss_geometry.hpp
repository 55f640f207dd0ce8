#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace gharm {

/// Euclidean ball carrying its Gauss-measure geometry. In 1-D this is the
/// interval (center - radius, center + radius).
struct GaussBall {
  std::vector<double> center;  // n-dimensional; n == 1 for all experiments
  double radius = 0.0;

  GaussBall() = default;
  GaussBall(double c, double r) : center{c}, radius(r) {}
  GaussBall(std::vector<double> c, double r) : center(std::move(c)), radius(r) {}

  int dim() const { return static_cast<int>(center.size()); }
  double center_norm() const;
  double c1() const { return center.at(0); }
};

/// radius <= min(1, 1/|center|), with 1/0 taken as +infinity.
bool is_admissible(const GaussBall& ball);

/// Admissible with equality: radius == min(1, 1/|center|).
bool is_maximal(const GaussBall& ball);

double maximal_radius(double center_norm);

/// The ball B_y with center y and radius min(1, 1/|y|).
GaussBall maximal_ball(double y);

/// Half-open bookkeeping is irrelevant for gamma; endpoints may be infinite.
struct Interval {
  double lo, hi;
};

/// gamma of an interval, computed by error-function differences with
/// cancellation-safe branches (erfc in the far tails).
double gauss_measure_interval(double lo, double hi);

/// gamma of a finite disjoint union of intervals. Throws std::invalid_argument
/// if the pieces overlap.
double gauss_measure_union(const std::vector<Interval>& pieces);

/// gamma of a ball: closed form in 1-D, recursive tensor quadrature for
/// n >= 2 (spot-check accuracy ~1e-10).
double gauss_measure_ball(const GaussBall& ball);

/// Relative density of gamma on an interval around a reference point c:
/// integrates g(x) * exp(-(x^2 - c^2)) dx / sqrt(pi), which equals
/// e^{c^2} * \int g dgamma. Keeps far-field ball statistics representable
/// where gamma(B) itself underflows.
double scaled_gauss_integral(const std::vector<double>& nodes_unit,
                             const std::vector<double>& weights_unit,
                             double lo, double hi, double cref,
                             const std::function<double(double)>& g);

/// gamma(2B)/gamma(B) for each admissible ball of the grid; throws on a
/// non-admissible input ball.
struct DoublingRow {
  double center, radius, ratio;
};
struct DoublingReport {
  std::vector<DoublingRow> rows;
  double max_ratio = 0.0;
};
DoublingReport doubling_ratio_scan(const std::vector<double>& centers,
                                   const std::vector<double>& radii_fractions);

/// Base set A (disjoint union of intervals, all inside {|x| >= b0}) plus the
/// shell width parameter kappa.
struct ShellSpec {
  std::vector<Interval> base;
  double kappa = 0.0;
};

inline constexpr double kShellB0 = 2.0;      // the unspecified ball B_0, fixed
inline constexpr double kShellKappaMax = 0.1;

/// gamma(A \cap {x : d(x, A^c) <= kappa/|x|}) / (kappa * gamma(A)), with the
/// shell set computed exactly by interval arithmetic in 1-D.
double boundary_shell_ratio(const ShellSpec& shell);

/// Riemannian distance with length element sqrt(1 + t^2) dt, via the closed
/// form (t sqrt(1+t^2) + asinh t)/2.
double rho_prime_distance_1d(double x, double y);

}  // namespace gharm
