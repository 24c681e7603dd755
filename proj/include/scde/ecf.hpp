#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "scde/model.hpp"
#include "scde/parallel.hpp"

namespace scde {

//! Data-driven default grid: dt = 2pi / (padding * range), m = points_per_side.
//!
//! The conjugate real-space period 2pi/dt then equals padding times the data
//! range, so the inverse transform does not alias within the data support.
//! A degenerate sample (range 0) falls back to range 1, or throws in strict
//! mode.
inline FrequencyGrid default_grid(const Sample& sample,
                                  std::size_t points_per_side = 1024,
                                  double padding = 3.0,
                                  bool strict = false)
{
  if (points_per_side < 64)
    throw InvalidInput("default_grid: points_per_side must be >= 64");
  if (!(padding >= 1.0))
    throw InvalidInput("default_grid: padding must be >= 1");
  double range = sample.range();
  if (range == 0.0) {
    if (strict)
      throw DegenerateSample();
    range = 1.0;
  }
  return FrequencyGrid(2.0 * std::numbers::pi / (padding * range), points_per_side);
}

//! Empirical characteristic function on the grid, by direct summation:
//! value(t_k) = (1/N) sum_j exp(i t_k X_j).
//!
//! Only k >= 0 is computed; negative nodes are the mirrored conjugates and
//! the t=0 node is pinned to exactly 1. Per data point, powers of
//! exp(i*dt*X_j) are built by recurrence over k. Points are accumulated in
//! fixed-size blocks combined in ascending order, so the result is
//! bit-identical for any thread count.
inline EcfTable ecf_evaluate(const Sample& sample, const FrequencyGrid& grid)
{
  const std::size_t m = grid.half_points();
  const double dt = grid.dt();
  const auto& xs = sample.values();
  const std::size_t block = 1024;
  const std::size_t nblocks = (xs.size() + block - 1) / block;

  std::vector<std::vector<Complex>> partial(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    auto& acc = partial[b];
    acc.assign(m, Complex(0.0, 0.0)); // k = 1..m
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(xs.size(), lo + block);
    for (std::size_t j = lo; j < hi; ++j) {
      const Complex z = std::polar(1.0, dt * xs[j]);
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        w *= z;
        acc[k] += w;
      }
    }
  });

  const double inv_n = 1.0 / static_cast<double>(xs.size());
  std::vector<Complex> values(grid.size(), Complex(0.0, 0.0));
  values[m] = Complex(1.0, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    Complex s(0.0, 0.0);
    for (std::size_t b = 0; b < nblocks; ++b)
      s += partial[b][k];
    s *= inv_n;
    // guard against rounding pushing |value| past 1
    const double a = std::abs(s);
    if (a > 1.0)
      s *= 1.0 / a;
    values[m + 1 + k] = s;
    values[m - 1 - k] = std::conj(s);
  }
  return EcfTable(grid, std::move(values));
}

} // namespace scde
