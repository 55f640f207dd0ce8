#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gharm/ou_spectral.hpp"

using namespace gharm;

TEST_CASE("hermite recurrence values") {
  CHECK(hermite_eval(0, 17.0) == 1.0);
  CHECK(hermite_eval(2, 0.7) == doctest::Approx(4 * 0.49 - 2).epsilon(1e-15));
  CHECK(hermite_eval(3, 1.0) == doctest::Approx(-4.0).epsilon(1e-15));
}

TEST_CASE("hermite norms") {
  CHECK(hermite_norm_sq(0) == 1.0);
  CHECK(hermite_norm_sq(2) == 8.0);
  CHECK(hermite_norm_sq(10) == doctest::Approx(1024.0 * 3628800.0));
  CHECK_THROWS_AS(hermite_norm_sq(400), std::range_error);
}

TEST_CASE("orthonormal family consistent with raw recurrence") {
  for (int j : {0, 1, 2, 5, 12}) {
    for (double x : {-2.3, 0.0, 0.4, 3.1}) {
      CHECK(hermite_orthonormal_eval(j, x) ==
            doctest::Approx(hermite_eval(j, x) / std::sqrt(hermite_norm_sq(j)))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("eigen residual vanishes") {
  std::vector<double> grid;
  for (double x = -5.0; x <= 5.0; x += 0.25) grid.push_back(x);
  CHECK(eigen_residual(1, grid) <= 1e-12);
  CHECK(eigen_residual(2, grid) <= 1e-10);
  CHECK(eigen_residual(8, grid) <= 1e-8);
  CHECK(eigen_residual(12, grid) <= 1e-6);
}

TEST_CASE("projection algebra") {
  SpectralFunction f;
  f.coeff = {{1.0, 0.0}, {0.5, -0.5}, {0.0, 2.0}};
  SpectralFunction p1 = project(f, 1);
  CHECK(project(p1, 1).coeff == p1.coeff);  // idempotence
  SpectralFunction zero_mode = project(f, 0);
  CHECK(zero_mode.coeff[0] == f.coeff[0]);
  CHECK(zero_mode.coeff[1] == std::complex<double>(0.0, 0.0));
  // resolution of identity
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j <= f.degree(); ++j) sum += project(f, j).eval(0.7);
  CHECK(std::abs(sum - f.eval(0.7)) <= 1e-14);
}

TEST_CASE("multipliers: unimodular action and the zero mode") {
  SpectralFunction f;
  f.coeff.assign(21, {0.0, 0.0});
  for (int j = 0; j <= 20; ++j)
    f.coeff[j] = {std::cos(1.0 + j), std::sin(2.0 + 0.3 * j)};

  const Multiplier mu = Multiplier::imaginary_power(1.0);
  SpectralFunction g = apply_multiplier(mu, f);
  CHECK(g.coeff[0] == std::complex<double>(0.0, 0.0));
  SpectralFunction f_no0 = f;
  f_no0.coeff[0] = {0.0, 0.0};
  CHECK(g.l2_norm() == doctest::Approx(f_no0.l2_norm()).epsilon(1e-14));

  const Multiplier shifted = Multiplier::shifted_imaginary_power(1.0, 1.0);
  CHECK(apply_multiplier(shifted, f).l2_norm() ==
        doctest::Approx(f.l2_norm()).epsilon(1e-14));

  // (rI+L)^{iu} on f = 1 is r^{iu} * 1
  SpectralFunction one;
  one.coeff = {{1.0, 0.0}};
  const Multiplier sh2 = Multiplier::shifted_imaginary_power(2.0, 3.0);
  SpectralFunction img = apply_multiplier(sh2, one);
  CHECK(std::abs(img.coeff[0] -
                 std::exp(std::complex<double>(0.0, 2.0 * std::log(3.0)))) <=
        1e-15);
}

TEST_CASE("gauss-hermite grid integrates polynomials against gamma") {
  const QuadratureGrid grid = gauss_hermite_gamma(12);
  double w_sum = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    w_sum += grid.weights[k];
    m2 += grid.weights[k] * grid.nodes[k] * grid.nodes[k];
    m4 += grid.weights[k] * std::pow(grid.nodes[k], 4);
  }
  CHECK(w_sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(0.5).epsilon(1e-12));     // int x^2 dgamma
  CHECK(m4 == doctest::Approx(0.75).epsilon(1e-12));    // int x^4 dgamma
}

TEST_CASE("expand recovers hermite coefficients") {
  // f(x) = H_2(x)/sqrt(8) + 2: coefficients c0 = 2, c2 = 1
  auto f = [](double x) {
    return (4 * x * x - 2) / std::sqrt(8.0) + 2.0;
  };
  SpectralFunction sf = expand(f, 6);
  CHECK(sf.coeff[0].real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sf.coeff[2].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sf.coeff[1]) <= 1e-12);
  CHECK(std::abs(sf.coeff[4]) <= 1e-12);
}

TEST_CASE("mehler kernel basic values") {
  CHECK(mehler_eval(50.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mehler_eval(0.7, 0.3, -1.1) ==
        doctest::Approx(mehler_eval(0.7, -1.1, 0.3)).epsilon(1e-14));
  CHECK(mehler_eval(1.0, 0.0, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(1.0 - std::exp(-2.0))).epsilon(1e-14));
  CHECK_THROWS_AS(mehler_eval(0.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("symmetric and asymmetric mehler forms agree") {
  for (double t : {0.2, 0.7, 1.0, 3.0}) {
    for (double x : {-2.0, 0.3, 1.9}) {
      for (double y : {-1.1, 0.0, 2.4}) {
        CHECK(mehler_eval(t, x, y) ==
              doctest::Approx(mehler_eval_asymmetric(t, x, y)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("substituted kernel matches after change of variables") {
  const double s = std::tanh(0.5);  // t = 1
  CHECK(mehler_substituted_eval(s, 0.0, 0.0) ==
        doctest::Approx(mehler_eval(1.0, 0.0, 0.0)).epsilon(1e-12));
  CHECK(mehler_substituted_eval(1e-8, 1.0, 2.0) <= 1e-100);
  CHECK_THROWS_AS(mehler_substituted_eval(1.5, 0.0, 0.0), std::domain_error);
}

TEST_CASE("series oracle matches the closed form within its tail bound") {
  SeriesValue s1 = mehler_series_eval(1.0, 0.0, 0.0, 40);
  CHECK(std::abs(s1.value - mehler_eval(1.0, 0.0, 0.0)) <=
        std::max(s1.tail_bound, 1e-10));

  SeriesValue s2 = mehler_series_eval_adaptive(0.2, 2.0, -1.0, 1e-8);
  CHECK(s2.converged);
  CHECK(std::abs(s2.value - mehler_eval(0.2, 2.0, -1.0)) <= 1e-8);

  SeriesValue j0 = mehler_series_eval(1.0, 0.9, -1.7, 0);
  CHECK(j0.value == 1.0);  // constant mode alone
}

TEST_CASE("series oracle over the acceptance grid") {
  for (double t : {0.2, 0.5, 1.0, 2.0}) {
    for (double x : {-3.0, -1.5, 0.0, 1.5, 3.0}) {
      for (double y : {-3.0, -1.5, 0.0, 1.5, 3.0}) {
        const double ref = mehler_eval(t, x, y);
        SeriesValue s = mehler_series_eval_adaptive(t, x, y, 1e-9 * ref);
        REQUIRE(s.converged);
        CHECK(std::abs(s.value - ref) / ref <= 1e-8);
      }
    }
  }
}

TEST_CASE("semigroup composition and stochasticity") {
  const QuadratureGrid grid = gauss_hermite_gamma(80);
  CHECK(semigroup_compose(0.5, 0.5, grid, 1.0, -1.0) ==
        doctest::Approx(mehler_eval(1.0, 1.0, -1.0)).epsilon(1e-6));
  CHECK(semigroup_compose(0.3, 0.7, grid, 0.0, 0.0) ==
        doctest::Approx(mehler_eval(1.0, 0.0, 0.0)).epsilon(1e-6));

  for (double t : {0.2, 1.0, 5.0}) {
    for (double x : {-3.0, 0.0, 1.5, 3.0}) {
      double mass = 0.0;
      for (std::size_t k = 0; k < grid.nodes.size(); ++k)
        mass += grid.weights[k] * mehler_eval(t, x, grid.nodes[k]);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}
