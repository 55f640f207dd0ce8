#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gharm/gauss_geometry.hpp"

namespace gharm {

enum class AtomKind { Standard, Global, Exceptional };

/// Atom candidate: a function handle plus its ball (absent for the
/// exceptional constant atom). Values outside the ball are ignored. The
/// actual atom is f(x) * exp(log_scale): far-field global atoms have values
/// ~ e^{c^2} that overflow a double, so the magnitude is carried in log form.
struct Atom {
  AtomKind kind = AtomKind::Exceptional;
  std::optional<GaussBall> ball;
  std::function<double(double)> f;
  double log_scale = 0.0;
};

Atom standard_atom(const GaussBall& ball, std::function<double(double)> f);
/// 1_{B_y} / gamma(B_y) on the maximal ball at y.
Atom global_atom(double y);
/// The constant function 1.
Atom exceptional_atom();

/// Diagnostics, not exceptions: booleans with measured residuals. Size and
/// cancellation are checked through gamma-mass ratios scaled by e^{c^2} so
/// far-field balls (|c| up to ~50) stay representable.
struct AtomValidation {
  bool ball_admissible = false;
  bool ball_maximal = false;
  bool size_ok = false;
  bool cancellation_ok = false;
  bool valid = false;
  double size_ratio = 0.0;      // ||a||_2 * gamma(B)^{1/2}, should be <= 1
  double mean_residual = 0.0;   // |mean| relative to the size scale
};
AtomValidation validate_atom(const Atom& candidate);

struct BmoRow {
  double center, radius, oscillation;
};
struct BmoReport {
  std::vector<BmoRow> rows;
  double sup_oscillation = 0.0;
  double l1_norm = 0.0;
  double norm = 0.0;  // ||f||_1 + sup oscillation
};
BmoReport bmo_mean_oscillation(const std::function<double(double)>& f,
                               const std::vector<GaussBall>& balls);

/// Default BMO scan grid: maximal and half-maximal intervals at centers
/// {0, +-1, +-2, ..., +-|c|_max}.
std::vector<GaussBall> default_ball_grid(double c_max, double c_step = 1.0);

/// max over the dictionary {1, x, x^2, localized sign} of
/// |<f, g>| / ||g||_BMO. A lower bound for ||f||_{H^1} modulo the (unknown)
/// duality pairing constant; only growth of this number is meaningful.
struct DualityBound {
  double bound = 0.0;
  std::string witness;
};
DualityBound h1_lower_bound_duality(const std::function<double(double)>& f,
                                    Interval support,
                                    const std::vector<GaussBall>& bmo_balls);

/// Piecewise-constant discretization on gamma-weighted cells. value[i] is
/// the gamma-mean of f on [edges[i], edges[i+1]).
struct CellFunction {
  std::vector<double> edges;
  std::vector<double> values;
};

/// Variable-width cells (~ quarter of the admissible width) on [-L, L],
/// L = max(10, |hint| + 2). Extra breakpoints are inserted into the edge
/// list so that sharp features (atom boundaries) are represented exactly.
CellFunction discretize(const std::function<double(double)>& f,
                        double center_hint,
                        const std::vector<double>& breakpoints = {});

enum class AtomicMode { H1, H1Glob };

struct AtomTerm {
  AtomKind kind;
  double center = 0.0, radius = 0.0, coefficient = 0.0;
};
struct Decomposition {
  std::vector<AtomTerm> terms;
  double sum_abs_coeff = 0.0;
  double residual_l1 = 0.0;
  bool converged = true;
};

/// Greedy atomic decomposition of the cell function: exceptional-mean peel
/// followed by prefix-sum transport between adjacent cells (H1 mode), or a
/// cover by maximal intervals (H1Glob mode). Sum of |coefficients| is an
/// upper bound for the respective atomic norm of the discretized function.
Decomposition h1_upper_bound_greedy(const CellFunction& f, AtomicMode mode,
                                    std::size_t atom_budget = 100000);

double h1glob_norm_bound(const CellFunction& f);

std::string decomposition_to_json(const Decomposition& d);

}  // namespace gharm
