#include "gharm/singular_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gharm/gauss_geometry.hpp"
#include "gharm/ou_spectral.hpp"
#include "gharm/parallel.hpp"
#include "gharm/quadrature.hpp"

namespace gharm {

namespace {

constexpr double kDensityNorm = 0.5641895835477562869;  // 1/sqrt(pi)
constexpr double kWindowHardStop = 60.0;
constexpr double kIncrementStop = 0.005;  // extend until a band adds < 0.5%

struct GammaIntegral {
  double value = 0.0;
  bool converged = true;
  std::vector<double> extension_history;
};

// gamma-integral of |g| over (pieces of) the real line clipped to a window
// that starts at [-x0, x0] and extends in steps of 5 until a band adds less
// than 0.5% of the running value.
GammaIntegral windowed_gamma_integral(
    const std::function<double(double)>& g_abs,
    const std::vector<Interval>& excluded, double x0, double abs_tol) {
  auto integrand = [&g_abs](double x) {
    return g_abs(x) * std::exp(-x * x) * kDensityNorm;
  };
  auto piece = [&](double lo, double hi, bool& ok) -> double {
    // clip out the excluded intervals (sorted, disjoint by construction)
    double total = 0.0;
    double cursor = lo;
    for (const Interval& e : excluded) {
      const double b = std::min(hi, e.lo);
      if (cursor < b) {
        QuadResult q = integrate_adaptive_real(integrand, cursor, b, abs_tol,
                                               60000);
        total += q.real();
        ok = ok && q.converged;
      }
      cursor = std::max(cursor, std::min(e.hi, hi));
    }
    if (cursor < hi) {
      QuadResult q = integrate_adaptive_real(integrand, cursor, hi, abs_tol,
                                             60000);
      total += q.real();
      ok = ok && q.converged;
    }
    return total;
  };

  GammaIntegral out;
  double x = x0;
  out.value = piece(-x, x, out.converged);
  out.extension_history.push_back(out.value);
  while (x < kWindowHardStop) {
    const double x_next = x + 5.0;
    double inc = piece(x, x_next, out.converged) +
                 piece(-x_next, -x, out.converged);
    out.value += inc;
    out.extension_history.push_back(out.value);
    x = x_next;
    if (std::abs(inc) < kIncrementStop * std::abs(out.value) ||
        std::abs(out.value) < abs_tol)
      break;
  }
  return out;
}

Verdict trend_verdict(const std::vector<double>& v) {
  if (v.size() < 2) return Verdict::Inconclusive;
  const double lo = *std::min_element(v.begin(), v.end());
  const double hi = *std::max_element(v.begin(), v.end());
  const double variation = (hi - lo) / std::max(lo, 1e-300);
  if (variation < 0.05) return Verdict::Plateau;
  bool increasing = true;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) increasing = false;
  if (increasing && variation >= 0.10) return Verdict::Growing;
  return Verdict::Inconclusive;
}

Verdict refinement_verdict(const std::vector<double>& history) {
  if (history.size() < 2) return Verdict::Inconclusive;
  const double prev = history[history.size() - 2];
  const double last = history.back();
  const double inc = (last - prev) / std::max(std::abs(prev), 1e-300);
  if (std::abs(inc) < 0.02) return Verdict::Plateau;
  bool increasing = true;
  for (std::size_t i = 1; i < history.size(); ++i)
    if (history[i] <= history[i - 1]) increasing = false;
  if (increasing && inc >= 0.02) return Verdict::Growing;
  return Verdict::Inconclusive;
}

}  // namespace

KernelHandle mehler_kernel_handle(double t) {
  KernelHandle h;
  h.name = "mehler";
  h.tail = KernelHandle::Tail::Gaussian;
  h.eval = [t](double x, double y, double) {
    KernelValue v;
    v.value = mehler_eval(t, x, y);
    v.error = 1e-14 * std::abs(v.value);
    return v;
  };
  return h;
}

KernelHandle impow_kernel_handle(const ImpowParams& p) {
  p.validate();
  KernelHandle h;
  h.name = "impow";
  h.tail = KernelHandle::Tail::LogGrowth;
  h.eval = [p](double x, double y, double abs_tol) {
    if (p.r == 1.0 && x != y && x != -y)
      return kernel_closed_form_1d(p, x, y, abs_tol, 50000);
    return kernel_quadrature(p, x, y, abs_tol, 50000);
  };
  return h;
}

KernelHandle cauchy_kernel_handle() {
  KernelHandle h;
  h.name = "cauchy";
  h.tail = KernelHandle::Tail::Unknown;
  h.eval = [](double x, double y, double) {
    KernelValue v;
    v.value = 1.0 / (x - y);
    return v;
  };
  return h;
}

KernelHandle near_identity_kernel_handle() {
  KernelHandle h;
  h.name = "near_identity";
  h.tail = KernelHandle::Tail::Gaussian;
  h.eval = [](double x, double y, double) {
    KernelValue v;
    const double r = maximal_radius(std::abs(y));
    if (std::abs(x - y) <= r)
      v.value = 1.0 / gauss_measure_interval(y - r, y + r);
    return v;
  };
  return h;
}

KernelHandle constant_kernel_handle(double c) {
  KernelHandle h;
  h.name = "constant";
  h.tail = KernelHandle::Tail::Gaussian;
  h.eval = [c](double, double, double) {
    KernelValue v;
    v.value = c;
    return v;
  };
  return h;
}

std::vector<double> hormander_default_centers() {
  return {0.0, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0, 12.0, -12.0};
}
std::vector<double> hormander_default_fractions() { return {1.0, 0.5}; }

EstimateReport hormander_estimate(const KernelHandle& k,
                                  const std::vector<double>& centers,
                                  const std::vector<double>& radii_fractions,
                                  RegionPolicy policy, int levels,
                                  double abs_tol) {
  struct Job {
    double center, radius, y1, y2;
  };
  std::vector<Job> jobs;
  for (double c : centers) {
    for (double frac : radii_fractions) {
      const double r = frac * maximal_radius(std::abs(c));
      if (!is_admissible(GaussBall(c, r)))
        throw std::invalid_argument("hormander_estimate: non-admissible ball");
      // pairs at ball endpoints and center
      jobs.push_back({c, r, c - r, c + r});
      jobs.push_back({c, r, c - r, c});
      jobs.push_back({c, r, c, c + r});
    }
  }

  struct JobResult {
    std::vector<double> level_values;
    bool converged = true;
  };
  auto run_job = [&](std::size_t idx) {
    const Job& job = jobs[idx];
    JobResult res;
    for (int level = 0; level < levels; ++level) {
      const double tol = abs_tol / std::pow(2.0, level);
      std::vector<Interval> excluded;
      if (policy == RegionPolicy::Complement2B) {
        excluded.push_back({job.center - 2 * job.radius,
                            job.center + 2 * job.radius});
      } else {
        // keep the window, excise shrinking neighborhoods of the two
        // singular points; a non-integrable difference grows level by level
        const double delta = job.radius / std::pow(2.0, level + 2);
        double lo1 = job.y1 - delta, hi1 = job.y1 + delta;
        double lo2 = job.y2 - delta, hi2 = job.y2 + delta;
        if (hi1 > lo2) {  // merge overlapping excisions
          excluded.push_back({lo1, std::max(hi1, hi2)});
        } else {
          excluded.push_back({lo1, hi1});
          excluded.push_back({lo2, hi2});
        }
      }
      auto diff = [&](double x) {
        return std::abs(k.eval(x, job.y1, tol).value -
                        k.eval(x, job.y2, tol).value);
      };
      const double x0 =
          std::max({std::abs(job.center), std::abs(job.y1), std::abs(job.y2)}) +
          10.0;
      GammaIntegral gi = windowed_gamma_integral(diff, excluded, x0, tol);
      res.level_values.push_back(gi.value);
      res.converged = res.converged && gi.converged;
    }
    return res;
  };
  const std::vector<JobResult> results =
      parallel_map<JobResult>(jobs.size(), run_job);

  EstimateReport report;
  report.refinement_history.assign(levels, 0.0);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (int level = 0; level < levels; ++level)
      report.refinement_history[level] = std::max(
          report.refinement_history[level], results[i].level_values[level]);
    report.rows.push_back({jobs[i].center, jobs[i].radius, jobs[i].y1,
                           jobs[i].y2, results[i].level_values.back()});
    report.converged = report.converged && results[i].converged;
  }
  report.supremum = report.refinement_history.back();
  report.verdict = refinement_verdict(report.refinement_history);
  return report;
}

EstimateReport i_infinity_estimate(const KernelHandle& k,
                                   const std::vector<double>& y_grid,
                                   double abs_tol) {
  struct YResult {
    double phi = 0.0;
    std::vector<double> history;
    bool converged = true;
  };
  auto run = [&](std::size_t idx) {
    const double y = y_grid[idx];
    const GaussBall by = maximal_ball(y);
    auto g = [&](double x) { return std::abs(k.eval(x, y, abs_tol).value); };
    const double x0 = std::max(std::abs(y), std::abs(by.c1())) + 10.0;
    GammaIntegral gi = windowed_gamma_integral(
        g, {{by.c1() - 2 * by.radius, by.c1() + 2 * by.radius}}, x0, abs_tol);
    YResult res;
    res.phi = gi.value;
    res.history = gi.extension_history;
    res.converged = gi.converged;
    return res;
  };
  const std::vector<YResult> results = parallel_map<YResult>(y_grid.size(), run);

  EstimateReport report;
  std::size_t depth = 0;
  std::vector<double> phis;
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    report.rows.push_back({y_grid[i], maximal_radius(std::abs(y_grid[i])),
                           y_grid[i], y_grid[i], results[i].phi});
    report.supremum = std::max(report.supremum, results[i].phi);
    report.converged = report.converged && results[i].converged;
    depth = std::max(depth, results[i].history.size());
    phis.push_back(results[i].phi);
  }
  // supremum across y at each window-extension stage (pad with final values)
  report.refinement_history.assign(depth, 0.0);
  for (const YResult& r : results) {
    for (std::size_t d = 0; d < depth; ++d) {
      const double v = d < r.history.size() ? r.history[d] : r.history.back();
      report.refinement_history[d] = std::max(report.refinement_history[d], v);
    }
  }
  report.verdict = trend_verdict(phis);
  return report;
}

DivergenceTable divergence_scan(const ImpowParams& p,
                                const std::vector<double>& ys,
                                double abs_tol) {
  p.validate();
  for (double y : ys)
    if (!(y >= 3.0))
      throw std::invalid_argument("divergence_scan: y values must be >= 3");

  const KernelHandle handle = impow_kernel_handle(p);
  auto run = [&](std::size_t idx) {
    const double y = ys[idx];
    const GaussBall by = maximal_ball(y);
    auto g = [&](double x) {
      return std::abs(handle.eval(x, y, abs_tol).value);
    };
    DivergenceRow row;
    row.y = y;
    GammaIntegral full = windowed_gamma_integral(
        g, {{by.c1() - 2 * by.radius, by.c1() + 2 * by.radius}},
        std::abs(y) + 10.0, abs_tol);
    row.phi = full.value;
    QuadResult window = integrate_adaptive_real(
        [&g](double x) { return g(x) * std::exp(-x * x) * kDensityNorm; },
        y - 1.0, y - 2.0 / y, abs_tol, 60000);
    row.phi_window = window.real();
    row.ln_y = std::log(y);
    row.comparator = std::log(y / 2.0);
    return std::pair<DivergenceRow, bool>(row, full.converged &&
                                                   window.converged);
  };
  const auto results =
      parallel_map<std::pair<DivergenceRow, bool>>(ys.size(), run);
  DivergenceTable table;
  for (const auto& [row, ok] : results) {
    table.rows.push_back(row);
    table.converged = table.converged && ok;
  }
  return table;
}

AtomImageNorm atom_image_norm(const KernelHandle& k, const Atom& a,
                              double op_l2_bound, double abs_tol) {
  const AtomValidation v = validate_atom(a);
  if (!v.valid)
    throw std::invalid_argument("atom_image_norm: invalid atom");
  if (!a.ball)
    throw std::invalid_argument("atom_image_norm: atom must carry a ball");
  const GaussBall& b = *a.ball;
  const double c = b.c1(), r = b.radius;

  AtomImageNorm out;
  // ||1_{2B} T a||_1 <= gamma(2B)^{1/2} ||T||_2 ||a||_2, and
  // ||a||_2 = size_ratio * gamma(B)^{-1/2}; the measure ratio is computed
  // scaled by e^{c^2} so far-field balls stay representable
  const auto& rule = gauss_legendre(64);
  const double s_b = scaled_gauss_integral(rule.nodes, rule.weights, c - r,
                                           c + r, c, [](double) { return 1.0; });
  const double s_2b = scaled_gauss_integral(rule.nodes, rule.weights, c - 2 * r,
                                            c + 2 * r, c,
                                            [](double) { return 1.0; });
  out.near_bound = std::sqrt(s_2b / s_b) * op_l2_bound * v.size_ratio;

  // T a(x) by quadrature over the (small) ball B
  const auto& inner = gauss_legendre(32);
  auto ta = [&](double x) {
    std::complex<double> sum{0.0, 0.0};
    const double mid = c, half = r;
    for (std::size_t i = 0; i < inner.nodes.size(); ++i) {
      const double v_pt = mid + half * inner.nodes[i];
      sum += inner.weights[i] * half * k.eval(x, v_pt, abs_tol).value *
             a.f(v_pt) * std::exp(a.log_scale - v_pt * v_pt) * kDensityNorm;
    }
    return std::abs(sum);
  };
  GammaIntegral far = windowed_gamma_integral(
      ta, {{c - 2 * r, c + 2 * r}}, std::abs(c) + 10.0, abs_tol);
  out.far_value = far.value;
  out.converged = far.converged;
  out.total = out.near_bound + out.far_value;
  return out;
}

double tay_identity_residual(const KernelHandle& k, double y,
                             const std::vector<double>& x_samples,
                             double abs_tol) {
  const GaussBall by = maximal_ball(y);
  const double lo = by.c1() - by.radius, hi = by.c1() + by.radius;
  for (double x : x_samples)
    if (x >= lo && x <= hi)
      throw std::invalid_argument("tay_identity_residual: sample inside B_y");

  // two independent quadratures of the gamma-mean over B_y; both sides
  // pre-subtract k(x,y) (algebraically neutral) so a constant kernel gives
  // residual 0 exactly
  auto mean_with = [&](const GaussLegendreRule& rule, double x,
                       const std::complex<double>& subtract) {
    std::complex<double> sum{0.0, 0.0};
    double wsum = 0.0;
    const double mid = by.c1(), half = by.radius;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double v = mid + half * rule.nodes[i];
      const double w = rule.weights[i] * std::exp(-(v - mid) * (v + mid));
      sum += w * (k.eval(x, v, abs_tol).value - subtract);
      wsum += w;
    }
    return sum / wsum;
  };

  double worst = 0.0;
  for (double x : x_samples) {
    const std::complex<double> kxy = k.eval(x, y, abs_tol).value;
    const std::complex<double> direct =
        mean_with(gauss_legendre(48), x, kxy) + kxy;
    const std::complex<double> via_tay =
        mean_with(gauss_legendre(32), x, kxy) + kxy;
    worst = std::max(worst, std::abs(direct - via_tay));
  }
  return worst;
}

LogFit fit_against_log(const std::vector<double>& ys,
                       const std::vector<double>& values) {
  if (ys.size() != values.size() || ys.size() < 2)
    throw std::invalid_argument("fit_against_log: need matched grids, n >= 2");
  const double n = static_cast<double>(ys.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double x = std::log(ys[i]);
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
    syy += values[i] * values[i];
  }
  LogFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double pred = fit.intercept + fit.slope * std::log(ys[i]);
    ss_res += (values[i] - pred) * (values[i] - pred);
    ss_tot += (values[i] - mean_y) * (values[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace gharm
