#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "scde/model.hpp"

namespace scde {

namespace detail {

//! Integral of g over [0, inf): composite Simpson in panels, extended until
//! the integrand falls below 1e-14 of its running maximum.
template<typename Fn>
double integrate_half_line(Fn&& g,
                           double step = 1e-3,
                           double panel = 2.0,
                           double t_cap = 5000.0)
{
  const std::size_t nint = static_cast<std::size_t>(panel / step);
  double total = 0.0;
  double global_max = 0.0;
  double a = 0.0;
  while (a < t_cap) {
    const double h = panel / static_cast<double>(nint);
    double s = 0.0;
    double panel_max = 0.0;
    for (std::size_t i = 0; i <= nint; ++i) {
      const double v = std::abs(g(a + h * static_cast<double>(i)));
      panel_max = std::max(panel_max, v);
      const double w = (i == 0 || i == nint) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * g(a + h * static_cast<double>(i));
    }
    total += s * h / 3.0;
    global_max = std::max(global_max, panel_max);
    a += panel;
    if (global_max > 0.0 && panel_max < 1e-14 * global_max)
      return total;
    if (global_max == 0.0 && a > 4.0 * panel)
      return total;
  }
  throw TailNotConverged(a);
}

} // namespace detail

//! Mean integrated square error of a convolution estimate with transfer
//! kappa, for samples of size n from dist:
//! (1/2pi) int { n^{-1} kappa^2 (1 - |phi|^2) + |phi|^2 (1 - kappa)^2 } dt.
inline double mise_fourier(const std::function<double(double)>& kappa,
                           const Distribution& dist,
                           std::size_t n,
                           double step = 1e-3)
{
  if (n < 2)
    throw InvalidN(n);
  const double nd = static_cast<double>(n);
  auto integrand = [&](double t) {
    const double p = std::norm(dist.cf(t));
    const double k = kappa(t);
    return k * k * (1.0 - p) / nd + p * (1.0 - k) * (1.0 - k);
  };
  return detail::integrate_half_line(integrand, step) / std::numbers::pi;
}

//! Real-space peak of the optimal kernel, K_opt(0) =
//! (1/2pi) int n / (n - 1 + |phi|^{-2}) dt, written |phi|^2-stably.
inline double optimal_kernel_peak(const Distribution& dist,
                                  std::size_t n,
                                  double step = 1e-3)
{
  const double nd = static_cast<double>(n);
  auto integrand = [&](double t) {
    const double p = std::norm(dist.cf(t));
    return nd * p / ((nd - 1.0) * p + 1.0);
  };
  return detail::integrate_half_line(integrand, step) / std::numbers::pi;
}

//! Minimum achievable error of any convolution estimate:
//! (K_opt^{(n)}(0) - K_opt^{(1)}(0)) / (n - 1), by quadrature.
inline double min_error_numeric(const Distribution& dist,
                                std::size_t n,
                                double step = 1e-3)
{
  if (n < 2)
    throw InvalidN(n);
  return (optimal_kernel_peak(dist, n, step) -
          optimal_kernel_peak(dist, 1, step)) /
         (static_cast<double>(n) - 1.0);
}

//! Li_{1/2}(z) for z <= 0, via the integral representation
//! Li_{1/2}(z) = (2z/sqrt(pi)) int_0^inf exp(-v^2) / (1 - z exp(-v^2)) dv
//! (the substitution u = v^2 removes the u^{-1/2} endpoint singularity).
//! The defining series diverges for z < -1, the integral does not.
inline double polylog_half(double z)
{
  if (z > 0.0)
    throw QuadratureFailure("polylog_half requires z <= 0");
  if (z == 0.0)
    return 0.0;
  const double v_max = 9.0;
  const std::size_t nint = 90000;
  const double h = v_max / static_cast<double>(nint);
  double s = 0.0;
  for (std::size_t i = 0; i <= nint; ++i) {
    const double v = h * static_cast<double>(i);
    const double e = std::exp(-v * v);
    const double g = e / (1.0 - z * e);
    const double w = (i == 0 || i == nint) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * g;
  }
  if (!std::isfinite(s))
    throw QuadratureFailure("polylog_half integrand not finite");
  return 2.0 * z / std::sqrt(std::numbers::pi) * (s * h / 3.0);
}

//! Minimum error for a Gaussian density in closed form, through the
//! polylogarithm: E = (-n Li_{1/2}(1-n) / (2 sqrt(pi) (n-1)) -
//! 1/(2 sqrt(pi))) / (n - 1), asymptotically sqrt(ln n) / (pi n).
inline double gauss_opt_error_closed(std::size_t n)
{
  if (n < 2)
    throw InvalidN(n);
  const double nd = static_cast<double>(n);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double peak_n =
    -nd / (2.0 * sqrt_pi * (nd - 1.0)) * polylog_half(1.0 - nd);
  const double peak_1 = 1.0 / (2.0 * sqrt_pi);
  return (peak_n - peak_1) / (nd - 1.0);
}

//! Minimum error for a Cauchy density in closed form:
//! (n ln(n) / (2 pi (n-1)) - 1/(2 pi)) / (n - 1).
inline double cauchy_opt_error_closed(std::size_t n)
{
  if (n < 2)
    throw InvalidN(n);
  const double nd = static_cast<double>(n);
  const double pi = std::numbers::pi;
  return (nd * std::log(nd) / (2.0 * pi * (nd - 1.0)) - 1.0 / (2.0 * pi)) /
         (nd - 1.0);
}

//! Exact Gaussian-kernel error for a Gaussian density at fixed bandwidth.
inline double gauss_kg_error_closed(std::size_t n, double h)
{
  if (n < 2)
    throw InvalidN(n);
  if (!(h > 0.0))
    throw InvalidInput("gauss_kg_error_closed: bandwidth must be positive");
  const double nd = static_cast<double>(n);
  return (1.0 / (nd * h) - 1.0 / (nd * std::sqrt(1.0 + h * h)) + 1.0 -
          2.0 / std::sqrt(1.0 + 0.5 * h * h) + 1.0 / std::sqrt(1.0 + h * h)) /
         (2.0 * std::sqrt(std::numbers::pi));
}

//! Scaled complementary error function exp(x^2) erfc(x), finite for large x.
inline double erfcx(double x)
{
  if (x < 25.0)
    return std::exp(x * x) * std::erfc(x);
  // asymptotic series, relative error below 1e-16 here
  const double ix2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * ix2;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

//! Exact Gaussian-kernel error for a Cauchy density at fixed bandwidth,
//! in overflow-safe erfcx form.
inline double cauchy_kg_error_closed(std::size_t n, double h)
{
  if (n < 2)
    throw InvalidN(n);
  if (!(h > 0.0))
    throw InvalidInput("cauchy_kg_error_closed: bandwidth must be positive");
  const double nd = static_cast<double>(n);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double inv_h = 1.0 / h;
  return 1.0 / (2.0 * sqrt_pi * nd * h) + 1.0 / (2.0 * std::numbers::pi) +
         (nd - 1.0) / (2.0 * sqrt_pi * nd * h) * erfcx(inv_h) -
         std::sqrt(2.0) / (sqrt_pi * h) * erfcx(std::sqrt(2.0) * inv_h);
}

//! Maximum-likelihood reference error for a Gaussian density:
//! 7 / (16 sqrt(pi) n).
inline double gauss_ml_error(std::size_t n)
{
  if (n < 1)
    throw InvalidN(n);
  return 7.0 / (16.0 * std::sqrt(std::numbers::pi) * static_cast<double>(n));
}

} // namespace scde
