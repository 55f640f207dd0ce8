#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gharm/quadrature.hpp"

using namespace gharm;

TEST_CASE("adaptive GK15 integrates smooth functions") {
  auto res = integrate_adaptive_real([](double x) { return std::cos(x); }, 0.0,
                                     2.0, 1e-12);
  CHECK(res.converged);
  CHECK(res.real() == doctest::Approx(std::sin(2.0)).epsilon(1e-12));
}

TEST_CASE("adaptive GK15 handles a sharp peak") {
  auto res = integrate_adaptive_real(
      [](double x) { return std::exp(-1000.0 * x * x); }, -1.0, 1.0, 1e-12);
  CHECK(res.converged);
  CHECK(res.real() ==
        doctest::Approx(std::sqrt(M_PI / 1000.0)).epsilon(1e-10));
}

TEST_CASE("adaptive GK15 oscillatory with log endpoint") {
  // int_0^1 cos(8 log s) ds = Re[ 1/(1 + 8i) ] = 1/65
  auto res = integrate_adaptive(
      [](double s) {
        return std::complex<double>(std::cos(8.0 * std::log(s)), 0.0);
      },
      1e-14, 1.0, 1e-11);
  CHECK(res.real() == doctest::Approx(1.0 / 65.0).epsilon(1e-8));
}

TEST_CASE("error estimate reported when budget exhausted") {
  auto res = integrate_adaptive_real(
      [](double x) { return 1.0 / std::sqrt(std::abs(x) + 1e-14); }, 0.0, 1.0,
      1e-16, 600);
  CHECK_FALSE(res.converged);
  CHECK(res.error > 0.0);
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  const auto& rule = gauss_legendre(12);
  double sum_w = 0.0, moment10 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum_w += rule.weights[i];
    moment10 += rule.weights[i] * std::pow(rule.nodes[i], 10);
  }
  CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(moment10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}
