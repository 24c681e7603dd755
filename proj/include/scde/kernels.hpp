#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "scde/ecf.hpp"
#include "scde/model.hpp"
#include "scde/parallel.hpp"
#include "scde/transform.hpp"

namespace scde {

struct KernelSpec
{
  enum class Kind
  {
    gaussian,
    flat_top,
    optimal_oracle
  };
  Kind kind = Kind::gaussian;
  //! Bandwidth in data units; unused by the oracle.
  double bandwidth = 0.0;
  //! True-density spectrum for the clairvoyant oracle.
  const Distribution* oracle = nullptr;
};

//! Rule-of-thumb Gaussian bandwidth h = 0.79 * iqr * n^{-1/5}
//! (Silverman Eq. 3.29). Falls back to 1.06 * stddev * n^{-1/5} when the
//! interquartile range is zero; the constants agree for Gaussian data,
//! where iqr = 1.349 * stddev.
inline double kg_bandwidth(const Sample& sample,
                           std::vector<std::string>* warnings = nullptr)
{
  const double scale = std::pow(static_cast<double>(sample.n()), -0.2);
  const double iq = sample.iqr();
  if (iq > 0.0)
    return 0.79 * iq * scale;
  const double sd = sample.stddev();
  if (sd <= 0.0)
    throw ZeroIQR();
  if (warnings)
    warnings->push_back(
      "zero_iqr: interquartile range is zero, using standard deviation");
  return 1.06 * sd * scale;
}

//! Trapezoidal-kernel bandwidth: h^{-1} = 2 * min{ m : |ecf(m+s)|^2 <
//! c2 * ln(n)/n for all s in (0, ln(n)) }, with m scanned over grid nodes.
//! Candidates whose look-ahead window leaves the grid cannot be verified;
//! if no earlier candidate qualified the grid is too short.
inline double kt_bandwidth(const EcfTable& ecf, std::size_t n, double c2)
{
  if (n < 3)
    throw InvalidN(n);
  if (!(c2 > 0.0))
    throw InvalidInput("kt_bandwidth: c2 must be positive");
  const double nd = static_cast<double>(n);
  const double tau = c2 * std::log(nd) / nd;
  const double window = std::log(nd);
  const auto& grid = ecf.grid();
  const std::size_t m = grid.half_points();
  const double dt = grid.dt();

  for (std::size_t k = 1; k <= m; ++k) {
    const double tm = static_cast<double>(k) * dt;
    if (tm + window > grid.t_max())
      break; // window no longer fits
    bool ok = true;
    for (std::size_t j = k + 1; static_cast<double>(j) * dt < tm + window; ++j) {
      if (std::norm(ecf.at(static_cast<std::ptrdiff_t>(j))) >= tau) {
        ok = false;
        break;
      }
    }
    if (ok)
      return 1.0 / (2.0 * tm);
  }
  throw NoQualifyingM();
}

//! Flat-top trapezoid in the frequency domain: 1 on |h*t| <= 1/2, linear
//! ramp to 0 at |h*t| = 1.
inline double flat_top_transfer(double t, double h)
{
  if (!(h > 0.0))
    throw InvalidInput("flat_top_transfer: bandwidth must be positive");
  const double s = std::abs(h * t);
  if (s <= 0.5)
    return 1.0;
  if (s <= 1.0)
    return 2.0 * (1.0 - s);
  return 0.0;
}

//! Transfer function of the kernel at frequency t.
inline double kernel_transfer(const KernelSpec& spec, double t, std::size_t n)
{
  switch (spec.kind) {
    case KernelSpec::Kind::gaussian: {
      if (!(spec.bandwidth > 0.0))
        throw InvalidInput("kernel_transfer: bandwidth must be positive");
      const double ht = spec.bandwidth * t;
      return std::exp(-0.5 * ht * ht);
    }
    case KernelSpec::Kind::flat_top:
      return flat_top_transfer(t, spec.bandwidth);
    case KernelSpec::Kind::optimal_oracle: {
      if (!spec.oracle)
        throw InvalidInput("kernel_transfer: oracle kernel needs a distribution");
      const double nd = static_cast<double>(n);
      const double p = std::norm(spec.oracle->cf(t));
      // N / (N - 1 + p^{-1}) written p-stably; p = 0 gives 0.
      return nd * p / ((nd - 1.0) * p + 1.0);
    }
  }
  return 0.0;
}

//! Spectral form of a convolution estimate: ecf multiplied by the kernel
//! transfer on every node. All transfers satisfy kappa(0) = 1, so the
//! center value stays exactly 1.
inline SpectralEstimate kernel_spectral(const EcfTable& ecf,
                                        std::size_t n,
                                        const KernelSpec& spec)
{
  const auto& grid = ecf.grid();
  const std::size_t m = grid.half_points();
  std::vector<Complex> values(grid.size());
  std::vector<std::uint8_t> mask(grid.size(), 0);
  values[m] = Complex(1.0, 0.0);
  mask[m] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    const double kappa =
      kernel_transfer(spec, static_cast<double>(k) * grid.dt(), n);
    const Complex v = ecf.at(static_cast<std::ptrdiff_t>(k)) * kappa;
    values[m + k] = v;
    values[m - k] = std::conj(v);
    mask[m + k] = mask[m - k] = kappa != 0.0;
  }
  // masked-off nodes must hold exact zeros
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!mask[i])
      values[i] = Complex(0.0, 0.0);
  return SpectralEstimate(grid, std::move(values), std::move(mask),
                          grid.t_max());
}

//! Kernel estimate through the spectral pipeline, on an explicit grid.
inline DensityCurve kernel_estimate(const EcfTable& ecf,
                                    std::size_t n,
                                    const KernelSpec& spec,
                                    double x_min,
                                    double x_max,
                                    std::size_t count)
{
  return inverse_transform(kernel_spectral(ecf, n, spec), x_min, x_max, count);
}

//! Kernel estimate with the default data-driven grid.
inline DensityCurve kernel_estimate(const Sample& sample,
                                    const KernelSpec& spec,
                                    double x_min,
                                    double x_max,
                                    std::size_t count)
{
  const FrequencyGrid grid = default_grid(sample);
  return kernel_estimate(ecf_evaluate(sample, grid), sample.n(), spec, x_min,
                         x_max, count);
}

//! Two-stage adaptive-bandwidth estimate (Silverman-style): a fixed-h
//! Gaussian pilot at the data points sets local factors
//! lambda_j = (pilot(X_j)/g)^{-1/2}, g the geometric mean, and the final
//! estimate is a direct sum of locally scaled Gaussian kernels. The local
//! bandwidths rule out the spectral route.
inline DensityCurve adaptive_estimate(const Sample& sample,
                                      double x_min,
                                      double x_max,
                                      std::size_t count,
                                      std::vector<std::string>* warnings = nullptr)
{
  const std::size_t n = sample.n();
  if (n < 10)
    throw TooFewPoints(n, 10);
  const double h = kg_bandwidth(sample, warnings);
  const auto& xs = sample.values();
  const double norm_c = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  std::vector<double> pilot(n, 0.0);
  parallel_for(n, [&](std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = (xs[j] - xs[k]) / h;
      s += std::exp(-0.5 * u * u);
    }
    pilot[j] = s * norm_c / (static_cast<double>(n) * h);
  });

  bool floored = false;
  double log_sum = 0.0;
  for (double& p : pilot) {
    if (p <= 0.0) {
      p = 1e-300;
      floored = true;
    }
    log_sum += std::log(p);
  }
  if (floored && warnings)
    warnings->push_back("pilot_underflow: pilot density floored at 1e-300");
  const double g = std::exp(log_sum / static_cast<double>(n));

  std::vector<double> inv_hj(n);
  for (std::size_t j = 0; j < n; ++j)
    inv_hj[j] = 1.0 / (h * std::sqrt(g / pilot[j]));

  const double dx = (x_max - x_min) / static_cast<double>(count - 1);
  std::vector<double> f(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    const double x = x_min + static_cast<double>(i) * dx;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = (x - xs[j]) * inv_hj[j];
      s += inv_hj[j] * std::exp(-0.5 * u * u);
    }
    f[i] = s * norm_c / static_cast<double>(n);
  });
  return DensityCurve(x_min, x_max, std::move(f));
}

} // namespace scde
