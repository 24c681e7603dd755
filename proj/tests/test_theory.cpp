#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scde/distributions.hpp"
#include "scde/theory.hpp"

using namespace scde;

TEST_CASE("mise with a zero transfer is the squared mass of the truth")
{
  const auto dist = gaussian();
  const double v = mise_fourier([](double) { return 0.0; }, *dist, 100);
  CHECK(v == doctest::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi)))
               .epsilon(1e-8));
  CHECK(v == doctest::Approx(0.28209).epsilon(1e-4));
}

TEST_CASE("mise with a unit transfer diverges: the variance integral is infinite")
{
  // kappa = 1 leaves n^{-1} * (1 - |phi|^2), which tends to a constant;
  // the tail extension must report non-convergence rather than a number
  const auto dist = gaussian();
  CHECK_THROWS_AS(mise_fourier([](double) { return 1.0; }, *dist, 100),
                  TailNotConverged);
}

TEST_CASE("optimal transfer reaches the minimum error")
{
  const auto dist = gaussian();
  const std::size_t n = 100;
  const double nd = 100.0;
  const double direct = mise_fourier(
    [&](double t) {
      const double p = std::norm(dist->cf(t));
      return nd * p / ((nd - 1.0) * p + 1.0);
    },
    *dist, n);
  CHECK(direct == doctest::Approx(min_error_numeric(*dist, n)).epsilon(1e-8));
}

TEST_CASE("minimum error agrees with the Gaussian asymptotic at large n")
{
  const std::size_t n = 1000000;
  const double asym = std::sqrt(std::log(1e6)) / (std::numbers::pi * 1e6);
  CHECK(min_error_numeric(*gaussian(), n) == doctest::Approx(asym).epsilon(0.1));
  CHECK(gauss_opt_error_closed(n) == doctest::Approx(asym).epsilon(0.1));
}

TEST_CASE("Cauchy minimum error: closed form vs quadrature")
{
  const auto dist = cauchy();
  for (std::size_t n : { 100, 10000 })
    CHECK(cauchy_opt_error_closed(n) ==
          doctest::Approx(min_error_numeric(*dist, n)).epsilon(1e-6));
}

TEST_CASE("minimum error at n=2 against a hand-rolled quadrature")
{
  const auto dist = gaussian();
  // K^(2)(0) - K^(1)(0), each (1/pi) int_0^inf N p / ((N-1)p + 1) dt
  auto peak = [&](double nd) {
    const double step = 1e-4;
    double s = 0.0;
    for (std::size_t i = 0; i < 200000; ++i) {
      const double t = (static_cast<double>(i) + 0.5) * step;
      const double p = std::exp(-t * t);
      s += nd * p / ((nd - 1.0) * p + 1.0);
    }
    return s * step / std::numbers::pi;
  };
  CHECK(min_error_numeric(*dist, 2) ==
        doctest::Approx(peak(2.0) - peak(1.0)).epsilon(1e-6));
}

TEST_CASE("polylogarithm route equals quadrature route for the Gaussian")
{
  const auto dist = gaussian();
  for (std::size_t n : { 10, 100, 1000 })
    CHECK(gauss_opt_error_closed(n) ==
          doctest::Approx(min_error_numeric(*dist, n)).epsilon(1e-6));
  CHECK(polylog_half(0.0) == 0.0);
  CHECK_THROWS_AS(polylog_half(0.5), QuadratureFailure);
  // Li_{1/2}(-1) = -eta(1/2) = -0.6048986434... (alternating zeta)
  CHECK(polylog_half(-1.0) == doctest::Approx(-0.6048986434).epsilon(1e-8));
}

TEST_CASE("Gaussian fixed-bandwidth error: closed form vs spectral integral")
{
  const auto dist = gaussian();
  const double h = 0.5;
  const double via_integral = mise_fourier(
    [&](double t) { return std::exp(-0.5 * h * h * t * t); }, *dist, 100);
  CHECK(gauss_kg_error_closed(100, h) ==
        doctest::Approx(via_integral).epsilon(1e-10));
}

TEST_CASE("Gaussian rule-of-thumb error follows the n^{-4/5} fit")
{
  for (double n : { 1e3, 1e4, 1e5, 1e6 }) {
    const double h = 1.06 * std::pow(n, -0.2);
    const double fit = 0.33 * std::pow(n, -0.8);
    CHECK(gauss_kg_error_closed(static_cast<std::size_t>(n), h) ==
          doctest::Approx(fit).epsilon(0.05));
  }
}

TEST_CASE("Gaussian error saturates at the squared mass for huge bandwidth")
{
  CHECK(gauss_kg_error_closed(100, 1e8) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi)))
          .epsilon(1e-6));
}

TEST_CASE("Cauchy fixed-bandwidth error: closed form vs spectral integral")
{
  const auto dist = cauchy();
  const double h = 1.0;
  const double via_integral = mise_fourier(
    [&](double t) { return std::exp(-0.5 * h * h * t * t); }, *dist, 100);
  CHECK(cauchy_kg_error_closed(100, h) ==
        doctest::Approx(via_integral).epsilon(1e-8));
}

TEST_CASE("Cauchy rule-of-thumb error follows the n^{-4/5} fit")
{
  for (double n : { 1e3, 1e4, 1e5, 1e6 }) {
    const double h = 1.58 * std::pow(n, -0.2);
    const double fit = 0.55 * std::pow(n, -0.8);
    CHECK(cauchy_kg_error_closed(static_cast<std::size_t>(n), h) ==
          doctest::Approx(fit).epsilon(0.05));
  }
}

TEST_CASE("small bandwidth is variance dominated")
{
  const std::size_t n = 100;
  const double h = 1e-4;
  const double variance_term =
    1.0 / (2.0 * std::sqrt(std::numbers::pi) * 100.0 * h);
  CHECK(cauchy_kg_error_closed(n, h) ==
        doctest::Approx(variance_term).epsilon(0.05));
}

TEST_CASE("maximum-likelihood reference line")
{
  CHECK(gauss_ml_error(1000) == doctest::Approx(2.4683e-4).epsilon(1e-4));
  CHECK(gauss_ml_error(1) ==
        doctest::Approx(7.0 / (16.0 * std::sqrt(std::numbers::pi)))
          .epsilon(1e-15));
  CHECK(gauss_ml_error(100) / gauss_ml_error(1000) ==
        doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("minimum error decreases with n")
{
  for (const auto& dist : { gaussian(), cauchy() }) {
    double prev = 1e300;
    for (std::size_t n : { 10, 100, 1000 }) {
      const double e = min_error_numeric(*dist, n);
      CHECK(e < prev);
      CHECK(e > 0.0);
      prev = e;
    }
  }
}

TEST_CASE("minimum error lower-bounds the rule-of-thumb kernel error")
{
  const auto dist = gaussian();
  for (std::size_t n : { 100, 1000, 10000 }) {
    const double h = 1.06 * std::pow(static_cast<double>(n), -0.2);
    CHECK(min_error_numeric(*dist, n) <= gauss_kg_error_closed(n, h));
  }
}

TEST_CASE("scaled complementary error function")
{
  // against exp(x^2) erfc(x) where it is still finite
  for (double x : { 0.0, 0.5, 2.0, 10.0, 24.9 })
    CHECK(erfcx(x) ==
          doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-12));
  // continuity across the series switch
  CHECK(erfcx(25.001) == doctest::Approx(erfcx(24.999)).epsilon(1e-4));
  // leading asymptotic 1/(x sqrt(pi))
  CHECK(erfcx(1000.0) ==
        doctest::Approx(1.0 / (1000.0 * std::sqrt(std::numbers::pi)))
          .epsilon(1e-5));
}

TEST_CASE("domain errors")
{
  CHECK_THROWS_AS(mise_fourier([](double) { return 0.0; }, *gaussian(), 1),
                  InvalidN);
  CHECK_THROWS_AS(min_error_numeric(*gaussian(), 1), InvalidN);
  CHECK_THROWS_AS(gauss_opt_error_closed(1), InvalidN);
  CHECK_THROWS_AS(gauss_kg_error_closed(100, 0.0), InvalidInput);
  CHECK_THROWS_AS(cauchy_kg_error_closed(100, -1.0), InvalidInput);
}
