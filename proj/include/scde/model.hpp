#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "scde/errors.hpp"
#include "scde/rng.hpp"

namespace scde {

using Complex = std::complex<double>;

//! Immutable sample of finite reals, n >= 2.
//!
//! Quantiles use linear interpolation between order statistics (the common
//! "type 7" rule), so iqr({1,2,3,4}) = 3.25 - 1.75 = 1.5. The KG bandwidth
//! depends on this convention.
class Sample
{
public:
  explicit Sample(std::vector<double> values)
    : values_(std::move(values))
  {
    if (values_.size() < 2)
      throw TooFewPoints(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!std::isfinite(values_[i]))
        throw NonFiniteValue(i);
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
    double s = 0.0;
    for (double v : values_)
      s += v;
    mean_ = s / static_cast<double>(values_.size());
    double css = 0.0;
    for (double v : values_)
      css += (v - mean_) * (v - mean_);
    centered_sum_sq_ = css;
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t n() const { return values_.size(); }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  double range() const { return max() - min(); }
  double mean() const { return mean_; }
  //! Sum of squared deviations from the mean.
  double centered_sum_sq() const { return centered_sum_sq_; }
  //! Standard deviation with 1/(n-1) normalization.
  double stddev() const
  {
    return std::sqrt(centered_sum_sq_ / static_cast<double>(n() - 1));
  }

  //! Type-7 quantile, p in [0, 1].
  double quantile(double p) const
  {
    const double h = p * static_cast<double>(n() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n())
      return sorted_.back();
    return sorted_[lo] + (h - static_cast<double>(lo)) * (sorted_[lo + 1] - sorted_[lo]);
  }

  double iqr() const { return quantile(0.75) - quantile(0.25); }

private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  double mean_ = 0.0;
  double centered_sum_sq_ = 0.0;
};

//! Validate raw data into a Sample (throws TooFewPoints / NonFiniteValue).
inline Sample validate_sample(std::vector<double> raw)
{
  return Sample(std::move(raw));
}

//! Uniform symmetric frequency grid t_k = k*dt, k = -m..m.
class FrequencyGrid
{
public:
  FrequencyGrid(double dt, std::size_t m)
    : dt_(dt)
    , m_(m)
  {
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw InvalidInput("FrequencyGrid: dt must be positive and finite");
    if (m < 1)
      throw InvalidInput("FrequencyGrid: m must be >= 1");
  }

  double dt() const { return dt_; }
  std::size_t half_points() const { return m_; }
  std::size_t size() const { return 2 * m_ + 1; }
  //! Array index of node k in [-m, m].
  std::size_t index(std::ptrdiff_t k) const
  {
    return static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(m_));
  }
  //! Frequency of array index i in [0, 2m].
  double node(std::size_t i) const
  {
    return (static_cast<double>(i) - static_cast<double>(m_)) * dt_;
  }
  double t_max() const { return static_cast<double>(m_) * dt_; }

  bool operator==(const FrequencyGrid& o) const = default;

private:
  double dt_;
  std::size_t m_;
};

//! Empirical characteristic function values on a grid.
//! Invariants checked here: center value exactly 1, Hermitian symmetry
//! bit-exact, |value| <= 1 + 1e-12.
class EcfTable
{
public:
  EcfTable(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(grid)
    , values_(std::move(values))
  {
    if (values_.size() != grid_.size())
      throw InvalidInput("EcfTable: value count does not match grid");
    const std::size_t m = grid_.half_points();
    if (values_[m] != Complex(1.0, 0.0))
      throw InvalidInput("EcfTable: value at t=0 must be exactly 1");
    for (std::size_t k = 1; k <= m; ++k) {
      if (values_[m - k] != std::conj(values_[m + k]))
        throw InvalidInput("EcfTable: Hermitian symmetry violated");
      if (std::abs(values_[m + k]) > 1.0 + 1e-12)
        throw InvalidInput("EcfTable: |value| exceeds 1 + 1e-12");
    }
  }

  const FrequencyGrid& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  //! Value at node k in [-m, m].
  Complex at(std::ptrdiff_t k) const { return values_[grid_.index(k)]; }

private:
  FrequencyGrid grid_;
  std::vector<Complex> values_;
};

//! A filtered spectral estimate: values on the grid, the accepted-frequency
//! mask, and the cutoff t*.
class SpectralEstimate
{
public:
  SpectralEstimate(FrequencyGrid grid,
                   std::vector<Complex> values,
                   std::vector<std::uint8_t> accepted,
                   double t_star)
    : grid_(grid)
    , values_(std::move(values))
    , accepted_(std::move(accepted))
    , t_star_(t_star)
  {
    const std::size_t m = grid_.half_points();
    if (values_.size() != grid_.size() || accepted_.size() != grid_.size())
      throw InvalidInput("SpectralEstimate: array sizes do not match grid");
    if (values_[m] != Complex(1.0, 0.0))
      throw InvalidInput("SpectralEstimate: value at t=0 must be exactly 1");
    if (!accepted_[m])
      throw InvalidInput("SpectralEstimate: t=0 must be accepted");
    for (std::size_t k = 1; k <= m; ++k)
      if (accepted_[m - k] != accepted_[m + k])
        throw InvalidInput("SpectralEstimate: accepted mask not symmetric");
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!accepted_[i] && values_[i] != Complex(0.0, 0.0))
        throw InvalidInput("SpectralEstimate: nonzero value off the accepted set");
  }

  const FrequencyGrid& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  const std::vector<std::uint8_t>& accepted() const { return accepted_; }
  double t_star() const { return t_star_; }
  std::size_t accepted_count() const
  {
    std::size_t c = 0;
    for (auto a : accepted_)
      c += a;
    return c;
  }

private:
  FrequencyGrid grid_;
  std::vector<Complex> values_;
  std::vector<std::uint8_t> accepted_;
  double t_star_;
};

//! Real density values on a uniform x-grid.
class DensityCurve
{
public:
  DensityCurve(double x_min, double x_max, std::vector<double> f)
    : x_min_(x_min)
    , x_max_(x_max)
    , f_(std::move(f))
  {
    if (!(x_min < x_max))
      throw InvalidInput("DensityCurve: x_min must be < x_max");
    if (f_.size() < 2)
      throw InvalidInput("DensityCurve: need at least 2 points");
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return f_.size(); }
  double dx() const { return (x_max_ - x_min_) / static_cast<double>(f_.size() - 1); }
  double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx(); }
  const std::vector<double>& f() const { return f_; }

  //! Trapezoid integral over [x_min, x_max].
  double integral() const
  {
    double s = 0.5 * (f_.front() + f_.back());
    for (std::size_t i = 1; i + 1 < f_.size(); ++i)
      s += f_[i];
    return s * dx();
  }

  //! Trapezoid integral of max(-f, 0): the mass carried by negative values.
  double negative_mass() const
  {
    auto neg = [&](std::size_t i) { return std::max(-f_[i], 0.0); };
    double s = 0.5 * (neg(0) + neg(f_.size() - 1));
    for (std::size_t i = 1; i + 1 < f_.size(); ++i)
      s += neg(i);
    return s * dx();
  }

private:
  double x_min_;
  double x_max_;
  std::vector<double> f_;
};

//! A known distribution: exact pdf, characteristic function, seeded sampler.
class Distribution
{
public:
  virtual ~Distribution() = default;
  virtual const std::string& name() const = 0;
  virtual double pdf(double x) const = 0;
  virtual Complex cf(double t) const = 0;
  virtual std::vector<double> draw(Rng& rng, std::size_t n) const = 0;

  //! Integral of pdf^2 outside [lo, hi]; generic numeric fallback,
  //! overridden with closed forms where available.
  virtual double pdf_sq_outside(double lo, double hi) const;
};

struct BenchmarkRecord
{
  std::string distribution;
  std::string estimator;
  std::size_t n = 0;
  double mise_mean = 0.0;
  double mise_stderr = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

inline double Distribution::pdf_sq_outside(double lo, double hi) const
{
  // Extend outward in fixed panels until pdf^2 is negligible.
  auto one_side = [&](double start, double dir) {
    const double step = 1e-3;
    const double panel = 4.0;
    double total = 0.0;
    double a = start;
    for (int block = 0; block < 4096; ++block) {
      const double b = a + dir * panel;
      // composite Simpson on [a, b]
      const std::size_t nint = static_cast<std::size_t>(panel / step);
      const double h = (b - a) / static_cast<double>(nint);
      double s = 0.0;
      double peak = 0.0;
      for (std::size_t i = 0; i <= nint; ++i) {
        const double x = a + h * static_cast<double>(i);
        const double g = pdf(x) * pdf(x);
        peak = std::max(peak, g);
        const double w = (i == 0 || i == nint) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * g;
      }
      total += std::abs(s * h / 3.0);
      if (peak < 1e-18)
        return total;
      a = b;
    }
    throw TailNotConverged(a);
  };
  return one_side(lo, -1.0) + one_side(hi, +1.0);
}

} // namespace scde
