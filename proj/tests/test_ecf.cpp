#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scde/distributions.hpp"
#include "scde/ecf.hpp"
#include "scde/rng.hpp"

using namespace scde;

TEST_CASE("default_grid arithmetic")
{
  const double two_pi = 2.0 * std::numbers::pi;

  // range 10, padding 3, m = 1024
  const Sample a({ 0.0, 10.0 });
  const FrequencyGrid g1 = default_grid(a, 1024, 3.0);
  CHECK(g1.dt() == doctest::Approx(two_pi / 30.0).epsilon(1e-15));
  CHECK(g1.t_max() == doctest::Approx(1024.0 * two_pi / 30.0).epsilon(1e-15));
  CHECK(g1.half_points() == 1024);

  // padding 1, range 2*pi, m = 64 -> dt = 1
  const Sample b({ 0.0, two_pi });
  const FrequencyGrid g2 = default_grid(b, 64, 1.0);
  CHECK(g2.dt() == doctest::Approx(1.0).epsilon(1e-15));

  // degenerate range falls back to 1
  const Sample c({ 3.0, 3.0 });
  const FrequencyGrid g3 = default_grid(c, 64, 3.0);
  CHECK(g3.dt() == doctest::Approx(two_pi / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(default_grid(c, 64, 3.0, /*strict=*/true), DegenerateSample);

  CHECK_THROWS_AS(default_grid(a, 32, 3.0), InvalidInput);
  CHECK_THROWS_AS(default_grid(a, 1024, 0.5), InvalidInput);
}

TEST_CASE("ecf of identical points is identically one")
{
  const Sample s({ 0.0, 0.0 });
  const EcfTable e = ecf_evaluate(s, FrequencyGrid(0.7, 16));
  for (const Complex& v : e.values()) {
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("ecf of {0, pi} vanishes at t = 1")
{
  const Sample s({ 0.0, std::numbers::pi });
  const EcfTable e = ecf_evaluate(s, FrequencyGrid(1.0, 4));
  CHECK(std::abs(e.at(1)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(e.at(1)) < 1e-15);
}

TEST_CASE("ecf concentrates on the true characteristic function")
{
  const auto dist = gaussian();
  Rng rng(12345);
  const Sample s(dist->draw(rng, 10000));
  // dt = 0.25 puts a node exactly at t = 1
  const EcfTable e = ecf_evaluate(s, FrequencyGrid(0.25, 64));
  const double err = std::abs(e.at(4) - Complex(std::exp(-0.5), 0.0));
  CHECK(err < 4.0 / std::sqrt(10000.0));
}

TEST_CASE("ecf invariants: Hermitian symmetry and amplitude bound")
{
  const auto dist = cauchy();
  Rng rng(99);
  const Sample s(dist->draw(rng, 777));
  const EcfTable e = ecf_evaluate(s, default_grid(s, 256, 3.0));
  const std::size_t m = e.grid().half_points();
  for (std::size_t k = 1; k <= m; ++k) {
    CHECK(e.at(-static_cast<std::ptrdiff_t>(k)) ==
          std::conj(e.at(static_cast<std::ptrdiff_t>(k))));
    CHECK(std::abs(e.at(static_cast<std::ptrdiff_t>(k))) <= 1.0 + 1e-12);
  }
  CHECK(e.at(0) == Complex(1.0, 0.0));
}

TEST_CASE("ecf second moment matches the finite-sample bias formula")
{
  // E(|ecf(t)|^2) = |phi|^2 + (1 - |phi|^2) / N, averaged over R samples
  const auto dist = gaussian();
  const std::size_t N = 50;
  const std::size_t R = 200;
  const double t = 1.0;
  const double p = std::exp(-1.0); // |phi(1)|^2 for the standard Gaussian

  const FrequencyGrid grid(t, 2);
  double mean = 0.0, sq = 0.0;
  for (std::size_t r = 0; r < R; ++r) {
    Rng rng(Rng::stream_seed(2024, r));
    const Sample s(dist->draw(rng, N));
    const double a2 = std::norm(ecf_evaluate(s, grid).at(1));
    mean += a2;
    sq += a2 * a2;
  }
  mean /= static_cast<double>(R);
  const double var = (sq - static_cast<double>(R) * mean * mean) /
                     static_cast<double>(R - 1);
  const double se = std::sqrt(var / static_cast<double>(R));
  const double expected = p + (1.0 - p) / static_cast<double>(N);
  CHECK(std::abs(mean - expected) < 5.0 * se);
}

TEST_CASE("shifting the data leaves the ecf amplitude unchanged")
{
  const auto dist = gaussian();
  Rng rng(7);
  std::vector<double> xs = dist->draw(rng, 400);
  const Sample s(xs);
  for (double& x : xs)
    x += 2.5;
  const Sample shifted(xs);

  const FrequencyGrid grid(0.3, 64);
  const EcfTable e1 = ecf_evaluate(s, grid);
  const EcfTable e2 = ecf_evaluate(shifted, grid);
  for (std::size_t i = 0; i < e1.values().size(); ++i)
    CHECK(std::abs(e1.values()[i]) ==
          doctest::Approx(std::abs(e2.values()[i])).epsilon(1e-12));
}
