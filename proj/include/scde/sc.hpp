#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "scde/ecf.hpp"
#include "scde/model.hpp"
#include "scde/transform.hpp"

namespace scde {

//! Tuning knobs of the self-consistent estimator.
struct ScConfig
{
  //! Fraction of grid nodes on (0, t*] that must clear the amplitude
  //! threshold; the "one half" rule by default.
  double half_fraction = 0.5;
  //! Use this cutoff instead of the half-fraction scan.
  std::optional<double> tstar_override;
  //! Apply the downward-translation negativity correction to the output.
  bool correct_negative = false;
};

//! Amplitude threshold 4(n-1)/n^2: below it the only stable fixed point of
//! the spectral map is zero.
inline double sc_threshold(std::size_t n)
{
  if (n < 2)
    throw InvalidN(n);
  const double nd = static_cast<double>(n);
  return 4.0 * (nd - 1.0) / (nd * nd);
}

struct AcceptedSet
{
  std::vector<std::uint8_t> mask; // full symmetric grid, center always set
  double t_star = 0.0;
};

//! Threshold filter plus cutoff scan.
//!
//! B = {k : |ecf(t_k)|^2 >= 4(n-1)/n^2}. The cutoff t* is the largest grid
//! node such that at least half_fraction of the nodes in (0, t*] belong to
//! B; the zero node carries no measure and is excluded from the count,
//! which makes the node count agree with the interval-measure reading on a
//! uniform grid. The accepted set is A = B intersected with [-t*, t*];
//! t = 0 is always accepted.
inline AcceptedSet select_accepted(const EcfTable& ecf,
                                   std::size_t n,
                                   const ScConfig& config = {})
{
  if (!(config.half_fraction > 0.0 && config.half_fraction <= 1.0))
    throw InvalidInput("select_accepted: half_fraction must be in (0, 1]");
  const double threshold = sc_threshold(n);
  const auto& grid = ecf.grid();
  const std::size_t m = grid.half_points();
  const double dt = grid.dt();

  std::vector<std::uint8_t> in_b(m + 1, 0);
  in_b[0] = 1; // |ecf(0)|^2 = 1 >= threshold since (n-2)^2 >= 0
  for (std::size_t k = 1; k <= m; ++k)
    in_b[k] = std::norm(ecf.at(static_cast<std::ptrdiff_t>(k))) >= threshold;

  double t_star = 0.0;
  if (config.tstar_override) {
    t_star = *config.tstar_override;
    if (!(t_star > 0.0))
      throw InvalidInput("select_accepted: t* override must be positive");
    if (t_star > grid.t_max() * (1.0 + 1e-12))
      throw OverrideOutOfGrid(t_star, grid.t_max());
  } else {
    std::size_t passed = 0;
    std::size_t best = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      passed += in_b[k];
      if (static_cast<double>(passed) >=
          config.half_fraction * static_cast<double>(k))
        best = k;
    }
    t_star = static_cast<double>(best) * dt;
  }

  const std::size_t k_max = std::min(
    m, static_cast<std::size_t>(std::floor(t_star / dt + 1e-9)));
  AcceptedSet out;
  out.t_star = t_star;
  out.mask.assign(grid.size(), 0);
  out.mask[m] = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    out.mask[m + k] = in_b[k];
    out.mask[m - k] = in_b[k];
  }
  return out;
}

//! Closed-form stable fixed point of the spectral map on the accepted set:
//! phi(t) = N*ecf(t) / (2(N-1)) * [1 + sqrt(1 - 4(N-1)/(N^2 |ecf(t)|^2))],
//! zero elsewhere. The sqrt argument is clamped at 0 so frequencies landing
//! exactly on the threshold take the double-root value instead of NaN.
inline SpectralEstimate sc_spectral(const EcfTable& ecf,
                                    std::size_t n,
                                    const ScConfig& config = {})
{
  auto acc = select_accepted(ecf, n, config);
  const auto& grid = ecf.grid();
  const std::size_t m = grid.half_points();
  const double nd = static_cast<double>(n);

  std::vector<Complex> values(grid.size(), Complex(0.0, 0.0));
  values[m] = Complex(1.0, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == m || !acc.mask[i])
      continue;
    const Complex d = ecf.values()[i];
    const double a2 = std::norm(d);
    const double arg = 1.0 - 4.0 * (nd - 1.0) / (nd * nd * a2);
    const double root = std::sqrt(std::max(0.0, arg));
    values[i] = d * (nd / (2.0 * (nd - 1.0)) * (1.0 + root));
  }
  return SpectralEstimate(grid, std::move(values), std::move(acc.mask),
                          acc.t_star);
}

//! Antitransform of the accepted spectrum back to a real-space curve.
inline DensityCurve sc_density(const SpectralEstimate& spec,
                               double x_min,
                               double x_max,
                               std::size_t count)
{
  return inverse_transform(spec, x_min, x_max, count);
}

struct ScMoments
{
  double mean = 0.0;
  double variance = 0.0;
  //! Central-difference checks from the spectrum at t = 0; accurate when
  //! the grid spacing is small against 1/stddev.
  double mean_spectral = 0.0;
  double variance_spectral = 0.0;
};

//! Mean and variance of the self-consistent estimate. The analytic values
//! are the sample mean and the 1/(n-2)-normalized sum of squared
//! deviations; the spectral values are finite-difference derivatives of
//! the estimate at t = 0.
inline ScMoments sc_moments(const SpectralEstimate& spec, const Sample& sample)
{
  const std::size_t n = sample.n();
  if (n <= 2)
    throw VarianceUndefined(n);
  ScMoments out;
  out.mean = sample.mean();
  out.variance = sample.centered_sum_sq() / static_cast<double>(n - 2);

  const double dt = spec.grid().dt();
  const Complex p = spec.values()[spec.grid().index(1)];
  const Complex q = spec.values()[spec.grid().index(-1)];
  const Complex der = (p - q) / (2.0 * dt);
  out.mean_spectral = (Complex(0.0, -1.0) * der).real();
  out.variance_spectral =
    -0.5 * (std::norm(p) - 2.0 + std::norm(q)) / (dt * dt);
  return out;
}

//! Downward translation: find c >= 0 with integral(max(f - c, 0)) = 1 and
//! return the clipped curve. A curve that is already nonnegative with mass
//! <= 1 is returned unchanged.
inline DensityCurve correct_negative(const DensityCurve& curve)
{
  const double total = curve.integral();
  if (std::abs(total - 1.0) > 0.05)
    throw InvalidInput("correct_negative: curve mass " + std::to_string(total) +
                       " is not within 0.05 of 1");

  const auto& f = curve.f();
  bool has_negative = false;
  double peak = 0.0;
  for (double v : f) {
    has_negative = has_negative || v < 0.0;
    peak = std::max(peak, v);
  }
  if (!has_negative && total <= 1.0)
    return curve;

  auto clipped_mass = [&](double c) {
    double s = 0.5 * (std::max(f.front() - c, 0.0) + std::max(f.back() - c, 0.0));
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
      s += std::max(f[i] - c, 0.0);
    return s * curve.dx();
  };

  if (clipped_mass(0.0) < 1.0 - 1e-6)
    throw NoSolution();

  double lo = 0.0;
  double hi = peak;
  if (clipped_mass(0.0) <= 1.0) {
    hi = 0.0; // clipping alone already lands within tolerance
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double mass = clipped_mass(mid);
    if (std::abs(mass - 1.0) <= 1e-9) {
      lo = hi = mid;
      break;
    }
    if (mass > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  const double c = 0.5 * (lo + hi);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = std::max(f[i] - c, 0.0);
  return DensityCurve(curve.x_min(), curve.x_max(), std::move(out));
}

struct IterationResult
{
  std::vector<Complex> phi;
  std::vector<int> iterations;
  std::vector<std::uint8_t> converged;
};

//! Pointwise iteration of the spectral map
//! phi_{k+1} = N*ecf / (N - 1 + |phi_k|^{-2}), with phi_k = 0 mapping to 0.
//! Used as a validation oracle for the closed form in sc_spectral.
inline IterationResult iterate_map(const EcfTable& ecf,
                                   std::size_t n,
                                   const std::vector<Complex>& phi0,
                                   int max_iter,
                                   double tol)
{
  if (n < 2)
    throw InvalidN(n);
  if (phi0.size() != ecf.grid().size())
    throw InvalidInput("iterate_map: phi0 size does not match grid");
  for (const Complex& p : phi0)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw InvalidInput("iterate_map: phi0 has non-finite entries");

  const double nd = static_cast<double>(n);
  IterationResult out;
  out.phi.resize(phi0.size());
  out.iterations.assign(phi0.size(), 0);
  out.converged.assign(phi0.size(), 0);

  for (std::size_t i = 0; i < phi0.size(); ++i) {
    const Complex d = ecf.values()[i];
    Complex phi = phi0[i];
    for (int it = 1; it <= max_iter; ++it) {
      const double a2 = std::norm(phi);
      const Complex next =
        a2 == 0.0 ? Complex(0.0, 0.0) : nd * d * (a2 / ((nd - 1.0) * a2 + 1.0));
      out.iterations[i] = it;
      if (std::abs(next - phi) < tol) {
        phi = next;
        out.converged[i] = 1;
        break;
      }
      phi = next;
    }
    out.phi[i] = phi;
  }
  return out;
}

struct ScDiagnostics
{
  std::size_t n = 0;
  double dt = 0.0;
  double t_star = 0.0;
  double threshold = 0.0;
  std::size_t accepted_count = 0;
  double negative_mass = 0.0;
  std::vector<std::string> warnings;
};

struct ScOptions
{
  std::size_t grid_points = 1024;
  double padding = 3.0;
  //! Explicit grid; overrides grid_points/padding when set.
  std::optional<FrequencyGrid> grid;
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::size_t x_count = 512;
};

struct ScResult
{
  DensityCurve density;
  SpectralEstimate spectral;
  ScDiagnostics diagnostics;
};

namespace detail {

//! True when all pairwise gaps are integer multiples of a common spacing
//! (within 1e-9 of the data scale): the transform of such data is periodic
//! and the frequency filter is not meaningful.
inline bool is_lattice(const Sample& sample)
{
  std::vector<double> sorted = sample.values();
  std::sort(sorted.begin(), sorted.end());
  const double scale = std::max({ 1.0, std::abs(sorted.front()),
                                  std::abs(sorted.back()) });
  const double tol = 1e-9 * scale;
  std::vector<double> gaps;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double g = sorted[i] - sorted[i - 1];
    if (g > tol)
      gaps.push_back(g);
  }
  if (gaps.empty())
    return false; // degenerate, reported separately
  double g = gaps[0];
  for (double gap : gaps) {
    double a = std::max(g, gap);
    double b = std::min(g, gap);
    while (b > tol) {
      const double r = std::abs(std::remainder(a, b));
      a = b;
      b = r;
    }
    g = a;
  }
  // Continuous data drives the gcd down to the tolerance itself, where the
  // remainder check below passes vacuously; demand a clearly resolved spacing.
  if (g <= 1e3 * tol)
    return false;
  for (double gap : gaps)
    if (std::abs(std::remainder(gap, g)) > tol)
      return false;
  return true;
}

} // namespace detail

//! Full pipeline: grid selection, empirical characteristic function,
//! closed-form fixed point, inverse transform, diagnostics.
inline ScResult sc_estimate(const Sample& sample,
                            const ScConfig& config = {},
                            const ScOptions& options = {})
{
  const FrequencyGrid grid =
    options.grid ? *options.grid
                 : default_grid(sample, options.grid_points, options.padding);
  const EcfTable ecf = ecf_evaluate(sample, grid);
  SpectralEstimate spec = sc_spectral(ecf, sample.n(), config);

  const double range = sample.range() > 0.0 ? sample.range() : 1.0;
  const double x_min = options.x_min.value_or(sample.min() - 0.2 * range);
  const double x_max = options.x_max.value_or(sample.max() + 0.2 * range);
  DensityCurve density = sc_density(spec, x_min, x_max, options.x_count);

  ScDiagnostics diag;
  diag.n = sample.n();
  diag.dt = grid.dt();
  diag.t_star = spec.t_star();
  diag.threshold = sc_threshold(sample.n());
  diag.accepted_count = spec.accepted_count();
  diag.negative_mass = density.negative_mass();

  if (sample.range() == 0.0)
    diag.warnings.push_back(
      "degenerate_sample: all points identical; the estimate is the "
      "transform of the full-band indicator, not a density");
  else if (detail::is_lattice(sample))
    diag.warnings.push_back(
      "lattice_data: points lie on a common lattice; the spectrum is "
      "periodic and frequency filtering is not meaningful");
  // Threshold crossings in the outer 5% of the grid mean the filter never
  // closed: the characteristic function may not be integrable and the
  // estimate is not guaranteed to converge.
  {
    const std::size_t m = grid.half_points();
    const double thr = diag.threshold;
    const std::size_t edge = m - m / 20;
    for (std::size_t k = edge; k <= m; ++k) {
      if (std::norm(ecf.at(static_cast<std::ptrdiff_t>(k))) >= thr) {
        diag.warnings.push_back(
          "open_spectrum: amplitudes above threshold at the grid edge; "
          "convergence of the estimate is not guaranteed");
        break;
      }
    }
  }
  if (diag.negative_mass > 0.005)
    diag.warnings.push_back(
      "negative_mass: estimate carries noticeable negative mass; "
      "convergence of the estimate is not guaranteed");

  if (config.correct_negative)
    density = correct_negative(density);

  return ScResult{ std::move(density), std::move(spec), std::move(diag) };
}

} // namespace scde
