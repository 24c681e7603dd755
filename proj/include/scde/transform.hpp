#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "scde/model.hpp"
#include "scde/parallel.hpp"

namespace scde {

//! Inverse transform of a spectral estimate onto a uniform x-grid:
//! f(x) = (dt / 2pi) * sum_{k accepted} exp(-i t_k x) phi(t_k),
//! rectangle rule in frequency. The sum runs over the full symmetric grid;
//! the imaginary residue must vanish up to rounding, anything larger
//! signals broken Hermitian symmetry upstream.
inline DensityCurve inverse_transform(const SpectralEstimate& spec,
                                      double x_min,
                                      double x_max,
                                      std::size_t count)
{
  if (!(x_min < x_max))
    throw InvalidInput("inverse_transform: x_min must be < x_max");
  if (count < 16)
    throw InvalidInput("inverse_transform: need at least 16 x points");

  const auto& grid = spec.grid();
  const auto& values = spec.values();
  const auto& accepted = spec.accepted();
  const double dt = grid.dt();
  const double md = static_cast<double>(grid.half_points());
  const double dx = (x_max - x_min) / static_cast<double>(count - 1);
  const double scale = dt / (2.0 * std::numbers::pi);

  std::vector<double> f(count, 0.0);
  std::vector<double> residue(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    const double x = x_min + static_cast<double>(i) * dx;
    const Complex step = std::polar(1.0, -dt * x);
    Complex w = std::polar(1.0, md * dt * x); // exp(-i t_{-m} x)
    Complex s(0.0, 0.0);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      if (accepted[idx])
        s += w * values[idx];
      w *= step;
    }
    s *= scale;
    f[i] = s.real();
    residue[i] = std::abs(s.imag());
  });

  double max_residue = 0.0;
  for (double r : residue)
    max_residue = std::max(max_residue, r);
  if (max_residue >= 1e-8)
    throw ImaginaryResidue(max_residue);

  return DensityCurve(x_min, x_max, std::move(f));
}

} // namespace scde
