#include "gharm/hardy_atoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gharm/quadrature.hpp"

namespace gharm {

namespace {

constexpr double kDensityNorm = 0.5641895835477562869;  // 1/sqrt(pi)

}  // namespace

Atom standard_atom(const GaussBall& ball, std::function<double(double)> f) {
  Atom a;
  a.kind = AtomKind::Standard;
  a.ball = ball;
  a.f = std::move(f);
  return a;
}

Atom global_atom(double y) {
  Atom a;
  a.kind = AtomKind::Global;
  a.ball = maximal_ball(y);
  const double c = a.ball->c1();
  const double lo = c - a.ball->radius;
  const double hi = c + a.ball->radius;
  // log gamma(B) = log(scaled mass) - c^2 stays representable for |c| ~ 50
  // where gamma(B) itself underflows
  const double scaled_mass =
      integrate_adaptive_real(
          [c](double x) {
            return std::exp(-(x - c) * (x + c)) * kDensityNorm;
          },
          lo, hi, 1e-14)
          .real();
  a.log_scale = c * c - std::log(scaled_mass);
  a.f = [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; };
  return a;
}

Atom exceptional_atom() {
  Atom a;
  a.kind = AtomKind::Exceptional;
  a.f = [](double) { return 1.0; };
  return a;
}

AtomValidation validate_atom(const Atom& candidate) {
  AtomValidation v;
  if (candidate.kind == AtomKind::Exceptional) {
    // the constant 1; nothing to measure
    v.size_ok = v.cancellation_ok = v.valid = true;
    v.size_ratio = 1.0;
    return v;
  }
  if (!candidate.ball || !candidate.f) return v;
  const GaussBall& b = *candidate.ball;
  v.ball_admissible = is_admissible(b);
  v.ball_maximal = is_maximal(b);

  const double c = b.c1();
  const double lo = c - b.radius, hi = c + b.radius;
  const auto& f = candidate.f;
  // all integrals carry the relative density e^{-(x^2 - c^2)} so far-field
  // balls stay representable; the e^{c^2} scale cancels in both ratios
  auto scaled = [&](const std::function<double(double)>& g) {
    return integrate_adaptive_real(
               [&g, c](double x) {
                 return g(x) * std::exp(-(x - c) * (x + c)) * kDensityNorm;
               },
               lo, hi, 1e-14)
        .real();
  };
  const double s_mass = scaled([](double) { return 1.0; });
  const double s_l2 = scaled([&f](double x) { return f(x) * f(x); });
  const double s_mean = scaled(f);
  // ||a||_2 gamma(B)^{1/2} <= 1 is the size condition in ratio form:
  // log(ratio) = log_scale - c^2 + (log s_l2 + log s_mass) / 2
  if (s_l2 <= 0.0) {
    v.size_ratio = 0.0;
  } else {
    v.size_ratio = std::exp(candidate.log_scale - c * c +
                            0.5 * (std::log(s_l2) + std::log(s_mass)));
  }
  v.size_ok = v.size_ratio <= 1.0 + 1e-8;
  // |mean| against the atom's natural L^1 scale ||a||_2 gamma(B)^{1/2}:
  // the scale factors cancel exactly in this quotient
  v.mean_residual =
      s_l2 > 0.0 ? std::abs(s_mean) / std::sqrt(s_l2 * s_mass) : 0.0;
  v.cancellation_ok = v.mean_residual <= 1e-8;

  switch (candidate.kind) {
    case AtomKind::Standard:
      v.valid = v.ball_admissible && v.size_ok && v.cancellation_ok;
      break;
    case AtomKind::Global:
      v.valid = v.ball_maximal && v.size_ok;
      break;
    default:
      break;
  }
  return v;
}

BmoReport bmo_mean_oscillation(const std::function<double(double)>& f,
                               const std::vector<GaussBall>& balls) {
  BmoReport report;
  const auto& rule = gauss_legendre(64);
  for (const GaussBall& b : balls) {
    const double c = b.c1();
    const double lo = c - b.radius, hi = c + b.radius;
    // all integrals scaled by e^{c^2} so far-field balls stay representable;
    // the mean and the oscillation are ratios, the scale cancels
    const double mass = scaled_gauss_integral(rule.nodes, rule.weights, lo, hi,
                                              c, [](double) { return 1.0; });
    const double fint = scaled_gauss_integral(rule.nodes, rule.weights, lo, hi,
                                              c, f);
    const double mean = fint / mass;
    // |f - mean| has a kink; adaptive quadrature instead of fixed GL
    const double osc_int =
        integrate_adaptive_real(
            [&f, mean, c](double x) {
              return std::abs(f(x) - mean) *
                     std::exp(-(x - c) * (x + c)) * kDensityNorm;
            },
            lo, hi, 1e-12 * std::max(mass, 1e-6), 40000)
            .real();
    const double osc = osc_int / mass;
    report.rows.push_back({c, b.radius, osc});
    report.sup_oscillation = std::max(report.sup_oscillation, osc);
  }
  // unit panels: one adaptive pass over (-30, 30) can miss the concentrated
  // bulk of the measure entirely
  report.l1_norm = 0.0;
  for (int j = -30; j < 30; ++j)
    report.l1_norm +=
        integrate_adaptive_real(
            [&f](double x) {
              return std::abs(f(x)) * std::exp(-x * x) * kDensityNorm;
            },
            j, j + 1.0, 1e-13, 20000)
            .real();
  report.norm = report.l1_norm + report.sup_oscillation;
  return report;
}

std::vector<GaussBall> default_ball_grid(double c_max, double c_step) {
  std::vector<GaussBall> balls;
  for (double c = 0.0; c <= c_max + 1e-12; c += c_step) {
    for (double sign : {1.0, -1.0}) {
      if (c == 0.0 && sign < 0.0) continue;
      const double center = sign * c;
      const double r = maximal_radius(std::abs(center));
      balls.emplace_back(center, r);
      balls.emplace_back(center, r / 2.0);
    }
  }
  return balls;
}

DualityBound h1_lower_bound_duality(const std::function<double(double)>& f,
                                    Interval support,
                                    const std::vector<GaussBall>& bmo_balls) {
  const double c0 = 0.5 * (support.lo + support.hi);
  const double r0 = maximal_radius(std::abs(c0));
  struct Witness {
    std::string name;
    std::function<double(double)> g;
  };
  const std::vector<Witness> dictionary = {
      {"1", [](double) { return 1.0; }},
      {"x", [](double x) { return x; }},
      {"x^2", [](double x) { return x * x; }},
      {"sign", [c0, r0](double x) {
         if (std::abs(x - c0) > r0) return 0.0;
         return x >= c0 ? 1.0 : -1.0;
       }}};

  DualityBound best;
  for (const Witness& w : dictionary) {
    const double pairing = integrate_adaptive_real(
                               [&](double x) {
                                 return f(x) * w.g(x) * std::exp(-x * x) *
                                        kDensityNorm;
                               },
                               support.lo, support.hi, 1e-12, 60000)
                               .real();
    const double denom = bmo_mean_oscillation(w.g, bmo_balls).norm;
    if (denom <= 0.0) continue;
    const double bound = std::abs(pairing) / denom;
    if (bound > best.bound) {
      best.bound = bound;
      best.witness = w.name;
    }
  }
  return best;
}

CellFunction discretize(const std::function<double(double)>& f,
                        double center_hint,
                        const std::vector<double>& breakpoints) {
  const double L = std::max(10.0, std::abs(center_hint) + 2.0);
  std::vector<double> edges;
  // build outward from 0 at ~ a quarter of the admissible width, then mirror
  std::vector<double> pos{0.0};
  while (pos.back() < L) {
    const double x = pos.back();
    pos.push_back(x + std::min(1.0, 1.0 / (x + 1.0)) / 4.0);
  }
  pos.back() = L;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) edges.push_back(-*it);
  for (std::size_t i = 1; i < pos.size(); ++i) edges.push_back(pos[i]);
  for (double b : breakpoints)
    if (b > -L && b < L) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return b - a < 1e-12; }),
              edges.end());

  CellFunction out;
  out.edges = edges;
  out.values.resize(edges.size() - 1);
  const auto& rule = gauss_legendre(16);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    const double mass = scaled_gauss_integral(rule.nodes, rule.weights,
                                              edges[i], edges[i + 1], mid,
                                              [](double) { return 1.0; });
    const double fint = scaled_gauss_integral(rule.nodes, rule.weights,
                                              edges[i], edges[i + 1], mid, f);
    out.values[i] = fint / mass;
  }
  return out;
}

namespace {

struct CellMeta {
  std::vector<double> mass;  // gamma of each cell
  double total_mass = 0.0;
};

CellMeta cell_masses(const CellFunction& f) {
  CellMeta meta;
  meta.mass.resize(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    meta.mass[i] = gauss_measure_interval(f.edges[i], f.edges[i + 1]);
    meta.total_mass += meta.mass[i];
  }
  return meta;
}

// smallest interval of cells carrying nonzero values; returns false if f = 0
bool support_range(const CellFunction& f, std::size_t& first, std::size_t& last) {
  bool found = false;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] != 0.0) {
      if (!found) first = i;
      last = i;
      found = true;
    }
  }
  return found;
}

}  // namespace

Decomposition h1_upper_bound_greedy(const CellFunction& f, AtomicMode mode,
                                    std::size_t atom_budget) {
  if (f.edges.size() != f.values.size() + 1 || f.values.empty())
    throw std::invalid_argument("h1_upper_bound_greedy: malformed cell function");
  Decomposition out;
  const CellMeta meta = cell_masses(f);

  std::size_t first = 0, last = 0;
  if (!support_range(f, first, last)) return out;  // zero function

  double l2_sq = 0.0, mean_mass = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    l2_sq += f.values[i] * f.values[i] * meta.mass[i];
    mean_mass += f.values[i] * meta.mass[i];
  }

  // fast path: the support fits inside one maximal ball
  {
    const double a = f.edges[first], b = f.edges[last + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double r = maximal_radius(std::abs(c));
    if (h <= r * (1.0 + 1e-9)) {
      const double ball_mass = gauss_measure_interval(c - r, c + r);
      const double lambda = std::sqrt(l2_sq * ball_mass);
      const bool zero_mean =
          std::abs(mean_mass) <= 1e-8 * std::max(lambda, 1e-300);
      if (zero_mean || mode == AtomicMode::H1Glob) {
        out.terms.push_back({zero_mean ? AtomKind::Standard : AtomKind::Global,
                             c, r, lambda});
        out.sum_abs_coeff = lambda;
        return out;
      }
    }
  }

  if (mode == AtomicMode::H1) {
    // peel the mean onto the exceptional atom, then transport what remains
    // between adjacent cells by prefix sums: the residual telescopes exactly
    const double mu = mean_mass / meta.total_mass;
    out.terms.push_back({AtomKind::Exceptional, 0.0, 0.0, mu});
    out.sum_abs_coeff += std::abs(mu);

    const std::size_t m = f.values.size();
    double prefix = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      prefix += (f.values[k] - mu) * meta.mass[k];
      if (std::abs(prefix) < 1e-300) continue;
      const double ga = meta.mass[k], gb = meta.mass[k + 1];
      if (ga <= 0.0 || gb <= 0.0) continue;  // cells beyond double range
      const double lambda =
          prefix * std::sqrt((1.0 / ga + 1.0 / gb) * (ga + gb));
      if (std::abs(lambda) < 1e-14) continue;
      if (out.terms.size() >= atom_budget) {
        out.converged = false;
        break;
      }
      out.terms.push_back({AtomKind::Standard,
                           0.5 * (f.edges[k] + f.edges[k + 2]),
                           0.5 * (f.edges[k + 2] - f.edges[k]), lambda});
      out.sum_abs_coeff += std::abs(lambda);
    }
    prefix += (f.values[m - 1] - mu) * meta.mass[m - 1];
    // rounding leftover in the last cell plus the exceptional tail off-grid
    out.residual_l1 = std::abs(prefix) + std::abs(mu) * (1.0 - meta.total_mass);
    return out;
  }

  // H1Glob: cover the support by maximal intervals from the left edge
  std::size_t begin = first;
  while (begin <= last) {
    const double a = f.edges[begin];
    double w = 0.5;
    for (int iter = 0; iter < 60; ++iter)
      w = 2.0 * maximal_radius(std::abs(a + 0.5 * w));
    // snap the end down to a cell edge, keeping at least one cell
    std::size_t end = begin;
    while (end + 1 <= last && f.edges[end + 2] <= a + w + 1e-12) ++end;
    double c = 0.5 * (a + f.edges[end + 1]);
    double r = maximal_radius(std::abs(c));
    while (end > begin && r < 0.5 * (f.edges[end + 1] - a) - 1e-12) {
      --end;  // center drift made the snapped piece too wide; shrink
      c = 0.5 * (a + f.edges[end + 1]);
      r = maximal_radius(std::abs(c));
    }
    double piece_l2 = 0.0;
    for (std::size_t i = begin; i <= end; ++i)
      piece_l2 += f.values[i] * f.values[i] * meta.mass[i];
    if (piece_l2 > 0.0) {
      const double ball_mass = gauss_measure_interval(c - r, c + r);
      const double lambda = std::sqrt(piece_l2 * ball_mass);
      if (out.terms.size() >= atom_budget) {
        out.converged = false;
        break;
      }
      out.terms.push_back({AtomKind::Global, c, r, lambda});
      out.sum_abs_coeff += lambda;
    }
    begin = end + 1;
  }
  return out;
}

double h1glob_norm_bound(const CellFunction& f) {
  return h1_upper_bound_greedy(f, AtomicMode::H1Glob).sum_abs_coeff;
}

std::string decomposition_to_json(const Decomposition& d) {
  nlohmann::ordered_json j;
  j["terms"] = nlohmann::ordered_json::array();
  for (const AtomTerm& t : d.terms) {
    const char* kind = t.kind == AtomKind::Standard   ? "standard"
                       : t.kind == AtomKind::Global   ? "global"
                                                      : "exceptional";
    j["terms"].push_back({{"kind", kind},
                          {"center", t.center},
                          {"radius", t.radius},
                          {"coefficient", t.coefficient}});
  }
  j["sum_abs_coeff"] = d.sum_abs_coeff;
  j["residual_l1"] = d.residual_l1;
  j["converged"] = d.converged;
  return j.dump();
}

}  // namespace gharm
