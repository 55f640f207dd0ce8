#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "gharm/gauss_geometry.hpp"
#include "gharm/hardy_atoms.hpp"

using namespace gharm;

TEST_CASE("atom validation: exceptional, sign, global") {
  const auto exc = validate_atom(exceptional_atom());
  CHECK(exc.valid);
  CHECK(exc.cancellation_ok);

  const GaussBall b(0.0, 1.0);
  const double mass = gauss_measure_ball(b);
  // |a| = gamma(B)^{-1/2} has ||a||_2 = 1 <= gamma(B)^{-1/2}: valid but not
  // extremal; |a| = gamma(B)^{-1} saturates the size condition
  const double sub = 1.0 / std::sqrt(mass);
  const auto sign_atom = standard_atom(
      b, [sub](double x) { return x >= 0.0 ? sub : -sub; });
  const auto v = validate_atom(sign_atom);
  CHECK(v.ball_admissible);
  CHECK(v.size_ok);
  CHECK(v.cancellation_ok);
  CHECK(v.valid);
  CHECK(v.size_ratio == doctest::Approx(std::sqrt(mass)).epsilon(1e-8));

  const double extremal = 1.0 / mass;
  const auto sharp = validate_atom(standard_atom(
      b, [extremal](double x) { return x >= 0.0 ? extremal : -extremal; }));
  CHECK(sharp.valid);
  CHECK(sharp.size_ratio == doctest::Approx(1.0).epsilon(1e-8));

  const auto g = validate_atom(global_atom(3.0));
  CHECK(g.valid);
  CHECK(g.ball_maximal);
  CHECK(g.size_ratio == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("atom validation diagnostics flag defects") {
  // non-admissible ball
  const auto bad_ball = validate_atom(
      standard_atom(GaussBall(4.0, 1.0), [](double) { return 0.0; }));
  CHECK_FALSE(bad_ball.ball_admissible);
  CHECK_FALSE(bad_ball.valid);

  // nonzero mean
  const auto bad_mean = validate_atom(
      standard_atom(GaussBall(0.0, 1.0), [](double) { return 1.0; }));
  CHECK_FALSE(bad_mean.cancellation_ok);
  CHECK(bad_mean.mean_residual > 0.1);

  // oversized
  const GaussBall b(0.0, 1.0);
  const double norm = 10.0 / std::sqrt(gauss_measure_ball(b));
  const auto bad_size = validate_atom(
      standard_atom(b, [norm](double x) { return x >= 0.0 ? norm : -norm; }));
  CHECK_FALSE(bad_size.size_ok);

  // a global atom must sit on a maximal ball
  Atom shrunk = global_atom(3.0);
  shrunk.ball->radius *= 0.5;
  CHECK_FALSE(validate_atom(shrunk).ball_maximal);
  CHECK_FALSE(validate_atom(shrunk).valid);
}

TEST_CASE("far-field global atoms stay representable") {
  for (double y : {20.0, 35.0, 50.0}) {
    const auto v = validate_atom(global_atom(y));
    CHECK(v.valid);
    CHECK(v.size_ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("bmo mean oscillation") {
  const auto grid = default_ball_grid(10.0);

  const auto constant = bmo_mean_oscillation([](double) { return 3.0; }, grid);
  CHECK(constant.sup_oscillation == doctest::Approx(0.0));
  CHECK(constant.norm == doctest::Approx(3.0).epsilon(1e-8));

  const auto x2 = bmo_mean_oscillation([](double x) { return x * x; }, grid);
  CHECK(x2.sup_oscillation > 0.0);
  CHECK(x2.sup_oscillation <= 6.0);
  CHECK(x2.l1_norm == doctest::Approx(0.5).epsilon(1e-8));  // E[x^2] = 1/2

  const auto x1 = bmo_mean_oscillation([](double x) { return x; }, grid);
  CHECK(x1.sup_oscillation > 0.0);
  CHECK(x1.sup_oscillation < 2.0);
}

TEST_CASE("x^2 oscillation stays below 6 far afield") {
  const auto grid = default_ball_grid(50.0, 5.0);
  const auto x2 = bmo_mean_oscillation([](double x) { return x * x; }, grid);
  CHECK(x2.sup_oscillation <= 6.0);
  for (const auto& row : x2.rows) CHECK(row.oscillation <= 6.0);
}

TEST_CASE("duality lower bound") {
  const auto grid = default_ball_grid(12.0);

  // f = 1_I / gamma(I) at c = 8 pairs with x^2 to at least c^2/2 modulo the
  // BMO normalization of the witness
  const GaussBall ball_8 = maximal_ball(8.0);
  const double mass_8 = gauss_measure_ball(ball_8);
  const Interval support{ball_8.c1() - ball_8.radius, ball_8.c1() + ball_8.radius};
  const auto bound = h1_lower_bound_duality(
      [mass_8, &support](double x) {
        return x >= support.lo && x <= support.hi ? 1.0 / mass_8 : 0.0;
      },
      support, grid);
  const auto x2 = bmo_mean_oscillation([](double x) { return x * x; }, grid);
  CHECK(bound.bound >= 0.99 * (8.0 * 8.0 / 2.0) / x2.norm);
  CHECK(bound.witness == "x^2");

  // zero-mean functions are invisible to the constant witness
  const double norm = 1.0 / std::sqrt(gauss_measure_ball(GaussBall(0.0, 1.0)));
  const auto atom_bound = h1_lower_bound_duality(
      [norm](double x) { return x >= 0.0 ? norm : -norm; }, {-1.0, 1.0}, grid);
  CHECK(atom_bound.witness != "1");
  CHECK(atom_bound.bound < 10.0);  // atoms have bounded duality pairings
}

TEST_CASE("discretize represents gamma means on cells") {
  const auto cells = discretize([](double x) { return x; }, 0.0, {0.0});
  REQUIRE(cells.edges.size() == cells.values.size() + 1);
  // edges sorted strictly
  for (std::size_t i = 1; i < cells.edges.size(); ++i)
    CHECK(cells.edges[i] > cells.edges[i - 1]);
  // a requested breakpoint appears exactly
  bool has_zero = false;
  for (double e : cells.edges) has_zero = has_zero || e == 0.0;
  CHECK(has_zero);
  // gamma-mean of x on a cell lies inside the cell
  for (std::size_t i = 0; i < cells.values.size(); ++i) {
    CHECK(cells.values[i] >= cells.edges[i]);
    CHECK(cells.values[i] <= cells.edges[i + 1]);
  }
}

namespace {

CellFunction discretized_global_atom(double y) {
  const GaussBall b = maximal_ball(y);
  const double mass = gauss_measure_ball(b);
  const double lo = b.c1() - b.radius, hi = b.c1() + b.radius;
  return discretize(
      [mass, lo, hi](double x) { return x >= lo && x <= hi ? 1.0 / mass : 0.0; },
      y, {lo, hi});
}

}  // namespace

TEST_CASE("greedy upper bounds: single atoms decompose as themselves") {
  // a standard atom supported on one admissible ball
  const GaussBall b(0.0, 1.0);
  const double norm = 1.0 / std::sqrt(gauss_measure_ball(b));
  const auto cells = discretize(
      [norm](double x) {
        if (x < -1.0 || x > 1.0) return 0.0;
        return x >= 0.0 ? norm : -norm;
      },
      0.0, {-1.0, 0.0, 1.0});
  const auto h1 = h1_upper_bound_greedy(cells, AtomicMode::H1);
  CHECK(h1.converged);
  CHECK(h1.sum_abs_coeff <= 1.0 + 1e-6);

  for (double y : {4.0, 8.0, 16.0}) {
    const auto glob = h1_upper_bound_greedy(discretized_global_atom(y),
                                            AtomicMode::H1Glob);
    CHECK(glob.converged);
    CHECK(glob.sum_abs_coeff <= 1.0 + 1e-6);
    CHECK(h1glob_norm_bound(discretized_global_atom(y)) <= 1.0 + 1e-6);
  }

  // H1-atoms are h1-atoms: the standard atom stays cheap in H1Glob mode too
  const auto glob_std = h1_upper_bound_greedy(cells, AtomicMode::H1Glob);
  CHECK(glob_std.sum_abs_coeff <= 1.0 + 1e-6);
}

TEST_CASE("strict inclusion: H1 cost of global atoms grows, h1 cost does not") {
  double prev = 0.0;
  for (double y : {4.0, 8.0, 16.0}) {
    const auto cells = discretized_global_atom(y);
    const auto h1 = h1_upper_bound_greedy(cells, AtomicMode::H1);
    const auto glob = h1_upper_bound_greedy(cells, AtomicMode::H1Glob);
    CHECK(glob.sum_abs_coeff <= 1.0 + 1e-6);
    CHECK(h1.sum_abs_coeff > 2.0 * std::max(prev, 1.0));
    // larger atom family can only be cheaper
    CHECK(glob.sum_abs_coeff <= h1.sum_abs_coeff + 1e-12);
    prev = h1.sum_abs_coeff;
  }
}

TEST_CASE("greedy reports budget exhaustion") {
  const auto cells = discretized_global_atom(8.0);
  const auto starved = h1_upper_bound_greedy(cells, AtomicMode::H1, 2);
  CHECK_FALSE(starved.converged);
  CHECK(starved.residual_l1 > 0.0);
}

TEST_CASE("decomposition json export") {
  const auto cells = discretized_global_atom(4.0);
  const auto d = h1_upper_bound_greedy(cells, AtomicMode::H1Glob);
  const auto parsed = nlohmann::json::parse(decomposition_to_json(d));
  REQUIRE(parsed.contains("terms"));
  CHECK(parsed["terms"].size() == d.terms.size());
  CHECK(parsed["sum_abs_coeff"].get<double>() ==
        doctest::Approx(d.sum_abs_coeff));
  for (const auto& term : parsed["terms"]) {
    CHECK(term.contains("kind"));
    CHECK(term.contains("center"));
    CHECK(term.contains("radius"));
    CHECK(term.contains("coefficient"));
  }
}
