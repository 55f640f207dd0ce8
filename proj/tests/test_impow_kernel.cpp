#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gharm/impow_kernel.hpp"
#include "gharm/ou_spectral.hpp"

using namespace gharm;

TEST_CASE("g_u modulus and conjugation") {
  CHECK(std::abs(g_u_eval(1.0, 0.5)) ==
        doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-15));
  CHECK(g_u_eval(0.0, 0.3).imag() == 0.0);
  CHECK(g_u_eval(0.0, 0.3).real() ==
        doctest::Approx(1.0 / std::log(1.3 / 0.7)).epsilon(1e-14));
  const auto gp = g_u_eval(2.0, 0.4);
  const auto gm = g_u_eval(-2.0, 0.4);
  CHECK(gm == std::conj(gp));
  CHECK_THROWS_AS(g_u_eval(1.0, 1.0), std::domain_error);
  // modulus * log base = 1 exactly across s
  for (double s : {0.01, 0.2, 0.5, 0.9, 0.999}) {
    CHECK(std::abs(g_u_eval(1.7, s)) * std::log((1 + s) / (1 - s)) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("F_a values and symmetry") {
  CHECK(f_a_eval(3.0, 1.0) == 0.0);
  CHECK(f_a_eval(4.0, 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
  for (double s : {0.2, 0.7, 3.0}) {
    CHECK(f_a_eval(2.5, s) == doctest::Approx(f_a_eval(2.5, 1.0 / s)).epsilon(1e-14));
    CHECK(f_a_eval(2.5, s) <= 0.0);
  }
}

TEST_CASE("complex gamma function") {
  CHECK(std::abs(gamma_complex({1.0, 0.0}) - 1.0) <= 1e-14);
  CHECK(std::abs(gamma_complex({5.0, 0.0}) - 24.0) <= 1e-11);
  // |Gamma(iu)|^2 = pi / (u sinh(pi u))
  const auto gi = gamma_complex({0.0, 1.0});
  CHECK(std::norm(gi) ==
        doctest::Approx(M_PI / std::sinh(M_PI)).epsilon(1e-12));
  // conjugate pair is real positive
  const auto prod = gamma_complex({0.0, 1.0}) * gamma_complex({0.0, -1.0});
  CHECK(prod.imag() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(prod.real() > 0.0);
  CHECK_THROWS_AS(gamma_complex({-2.0, 0.0}), std::domain_error);
  // reflection line z = iu up to |u| = 10
  for (double u : {0.5, 2.0, 10.0}) {
    const auto g = gamma_complex({0.0, u});
    CHECK(std::norm(g) ==
          doctest::Approx(M_PI / (u * std::sinh(M_PI * u))).epsilon(1e-11));
  }
}

TEST_CASE("i_integral converges and refines consistently") {
  QuadResult coarse = i_integral(1.0, 10.0, 0.1, 1e-8);
  QuadResult fine = i_integral(1.0, 10.0, 0.1, 1e-11);
  CHECK(coarse.converged);
  CHECK(fine.converged);
  CHECK(std::abs(coarse.value - fine.value) <=
        std::max(coarse.error, 1e-8) * 4.0);
  CHECK_THROWS_AS(i_integral(1.0, 1e-9, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(i_integral(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("lemma decomposition identities") {
  for (double a : {1.0, 10.0, 50.0}) {
    for (double sigma : {0.05, 0.1, 0.5}) {
      LemmaComponents lc = lemma_components(1.0, a, sigma, 1e-10);
      const double slack = 2.0 * (lc.error + 1e-10);
      CHECK(std::abs(lc.i_value - (lc.j_value + lc.h_value)) <= slack);
      CHECK(std::abs(lc.h_value - (lc.h1 + lc.h2 + lc.h3)) <= slack);
    }
  }
}

TEST_CASE("lemma lower bound witness on a coarse grid") {
  double floor = 1e300, ceiling = 0.0;
  for (double a : {1.0, 10.0, 100.0}) {
    for (double sigma : {0.01, 0.1, 0.5}) {
      LemmaComponents lc = lemma_components(1.0, a, sigma, 1e-10);
      floor = std::min(floor, std::sqrt(a * sigma) * std::abs(lc.i_value));
      ceiling = std::max(ceiling, a * std::sqrt(sigma) * std::abs(lc.h_value));
    }
  }
  CHECK(floor > 1e-9);   // at least 10x quadrature tolerance
  CHECK(ceiling < 1e3);  // a sqrt(sigma) |H| stays bounded
}

TEST_CASE("kernel conjugation symmetry across routes") {
  ImpowParams p{1.0, 1.0, 1};
  ImpowParams pm{-1.0, 1.0, 1};
  const KernelValue kq = kernel_quadrature(p, 1.0, 2.0);
  const KernelValue kqm = kernel_quadrature(pm, 1.0, 2.0);
  CHECK(std::abs(kqm.value - std::conj(kq.value)) <= 1e-10);

  const KernelValue kc = kernel_closed_form_1d(p, 1.0, 2.0);
  const KernelValue kcm = kernel_closed_form_1d(pm, 1.0, 2.0);
  CHECK(std::abs(kcm.value - std::conj(kc.value)) <= 1e-10);
}

TEST_CASE("route agreement quadrature vs closed form") {
  ImpowParams p{1.0, 1.0, 1};
  for (auto [x, y] : {std::pair{2.0, 1.0}, {0.5, -0.7}, {3.0, 2.5},
                      {-1.0, 1.5}, {4.0, 3.6}}) {
    const KernelValue kq = kernel_quadrature(p, x, y);
    const KernelValue kc = kernel_closed_form_1d(p, x, y);
    CHECK(std::abs(kq.value - kc.value) / std::abs(kc.value) <= 1e-6);
  }
}

TEST_CASE("spectral action fixes the normalization") {
  // compare int k(x, .) f dgamma with sum_j (j+r)^{iu} (P_j f)(x)
  ImpowParams p{1.0, 1.0, 1};
  const double x = 3.0;
  // bump away from x: Hermite data of exp(-4(t+1)^2)
  auto bump = [](double t) { return std::exp(-4.0 * (t + 1.0) * (t + 1.0)); };
  // h_j(3) ~ e^{4.5} amplifies the truncation tail; degree 250 is where the
  // spectral side stabilizes to ~1e-10
  const int deg = 250;
  SpectralFunction f = expand(bump, deg, 2 * deg + 40);

  std::complex<double> spectral{0.0, 0.0};
  const Multiplier m = Multiplier::shifted_imaginary_power(p.u, p.r);
  SpectralFunction mf = apply_multiplier(m, f);
  spectral = mf.eval(x);

  const QuadratureGrid grid = gauss_hermite_gamma(160);
  std::complex<double> direct{0.0, 0.0};
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    direct += grid.weights[k] * kernel_quadrature(p, x, grid.nodes[k], 1e-9).value *
              bump(grid.nodes[k]);
  }
  CHECK(std::abs(direct - spectral) / std::abs(spectral) <= 1e-4);
}

TEST_CASE("parameter map identities of the closed form") {
  const double x = 2.0, y = 1.0;
  const double a = x * x - y * y;
  const double sigma = (x - y) / (x + y);
  CHECK(a * sigma == doctest::Approx((x - y) * (x - y)).epsilon(1e-15));
  CHECK(a / sigma == doctest::Approx((x + y) * (x + y)).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
  ImpowParams bad_u{0.0, 1.0, 1};
  CHECK_THROWS_AS(bad_u.validate(), std::invalid_argument);
  ImpowParams bad_r{1.0, -1.0, 1};
  CHECK_THROWS_AS(bad_r.validate(), std::invalid_argument);
  ImpowParams p{1.0, 1.0, 1};
  CHECK_THROWS_AS(kernel_quadrature(p, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_closed_form_1d(p, 1.0, -1.0), std::domain_error);
}
