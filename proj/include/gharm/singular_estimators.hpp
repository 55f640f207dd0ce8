#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gharm/hardy_atoms.hpp"
#include "gharm/impow_kernel.hpp"

namespace gharm {

/// Pointwise kernel evaluator plus a declared tail-decay hint. The hint only
/// affects how aggressively truncated tails may be stopped; it never replaces
/// the increment-based stopping rule.
struct KernelHandle {
  enum class Tail { Gaussian, LogGrowth, Unknown };

  std::string name;
  Tail tail = Tail::Unknown;
  std::function<KernelValue(double x, double y, double abs_tol)> eval;
};

/// Mehler kernel h_t as a handle (gaussian tail).
KernelHandle mehler_kernel_handle(double t);
/// Kernel of (rI+L)^{iu}; closed form when r = 1, t-quadrature otherwise.
KernelHandle impow_kernel_handle(const ImpowParams& p);
/// k(x,y) = 1/(x-y): the control with a deliberately non-integrable
/// difference once the integration region keeps the singularity.
KernelHandle cauchy_kernel_handle();
/// Averaging kernel supported in |x-y| <= r_{B_y}; its mass outside 2B_y
/// vanishes identically.
KernelHandle near_identity_kernel_handle();
/// k identically equal to c.
KernelHandle constant_kernel_handle(double c);

enum class Verdict { Plateau, Growing, Inconclusive };
enum class RegionPolicy { Complement2B, FullWindow };

struct EstimateRow {
  double center = 0.0, radius = 0.0, y1 = 0.0, y2 = 0.0, value = 0.0;
};
struct EstimateReport {
  std::vector<EstimateRow> rows;  // at the finest refinement level
  double supremum = 0.0;
  std::vector<double> refinement_history;  // supremum per refinement level
  Verdict verdict = Verdict::Inconclusive;
  bool converged = true;
};

/// Empirical Hoermander constant: sup over sampled admissible balls B and
/// pairs y, y' in B of the gamma-integral of |k(x,y) - k(x,y')| over the
/// region. Complement2B excises 2B (the condition itself); FullWindow keeps
/// the whole window including the singularities, with an excision radius
/// that halves per refinement level -- a genuinely divergent difference then
/// shows up as a growing history.
EstimateReport hormander_estimate(const KernelHandle& k,
                                  const std::vector<double>& centers,
                                  const std::vector<double>& radii_fractions,
                                  RegionPolicy policy = RegionPolicy::Complement2B,
                                  int levels = 3, double abs_tol = 1e-8);

/// Default Hoermander design grid: centers {0, +-1, +-2, +-4, +-8, +-12},
/// radii fractions {1, 1/2} of maximal.
std::vector<double> hormander_default_centers();
std::vector<double> hormander_default_fractions();

/// Phi(y) = gamma-integral of |k(x,y)| over (2B_y)^c within the truncation
/// window; supremum and growth verdict across the y grid.
EstimateReport i_infinity_estimate(const KernelHandle& k,
                                   const std::vector<double>& y_grid,
                                   double abs_tol = 1e-8);

struct DivergenceRow {
  double y = 0.0;
  double phi = 0.0;         // full-complement gamma mass of |k(., y)|
  double phi_window = 0.0;  // restricted to (y-1, y-2/y)
  double ln_y = 0.0;
  double comparator = 0.0;  // ln(y/2) = int_{y-1}^{y-2/y} dx/(y-x)
};
struct DivergenceTable {
  std::vector<DivergenceRow> rows;
  bool converged = true;
};
DivergenceTable divergence_scan(const ImpowParams& p,
                                const std::vector<double>& ys,
                                double abs_tol = 1e-8);

/// ||T a||_1 through the proof's split: the near part 1_{2B} T a bounded via
/// L^2 (gamma(2B)^{1/2} gamma(B)^{-1/2} ||T||_2 ||a||_2 gamma(B)^{1/2}, with
/// the declared operator bound), the far part by quadrature. The total is an
/// upper bound whose growth is carried entirely by the far part.
struct AtomImageNorm {
  double near_bound = 0.0;
  double far_value = 0.0;
  double total = 0.0;
  bool converged = true;
};
AtomImageNorm atom_image_norm(const KernelHandle& k, const Atom& a,
                              double op_l2_bound = 1.0, double abs_tol = 1e-8);

/// max over x samples of |direct T a_y(x) - (mean-difference form + k(x,y))|
/// with independent quadrature orders on the two sides.
double tay_identity_residual(const KernelHandle& k, double y,
                             const std::vector<double>& x_samples,
                             double abs_tol = 1e-10);

/// Least-squares fit of v against log(y): slope and R^2, used by the
/// divergence acceptance check.
struct LogFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};
LogFit fit_against_log(const std::vector<double>& ys,
                       const std::vector<double>& values);

}  // namespace gharm
