#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "scde/distributions.hpp"
#include "scde/ecf.hpp"
#include "scde/kernels.hpp"
#include "scde/model.hpp"
#include "scde/parallel.hpp"
#include "scde/sc.hpp"
#include "scde/theory.hpp"
#include "scde/transform.hpp"

namespace scde {

struct BenchmarkPlan
{
  std::string distribution = "gaussian";
  std::vector<std::string> estimators = { "sc", "kg" };
  std::vector<std::size_t> n_list = { 100, 316, 1000, 3162, 10000 };
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
};

//! Per-distribution evaluation conventions: the ISE x-range (wide enough
//! that the truncated squared mass is a documented tail term) and a fixed
//! frequency grid whose conjugate period covers the x-range without
//! aliasing.
struct EvalSettings
{
  double x_min = -8.0;
  double x_max = 8.0;
  std::size_t x_count = 1601;
  FrequencyGrid grid{ 1.0, 1 };
};

inline EvalSettings eval_settings(const std::string& dist)
{
  const double two_pi = 2.0 * std::numbers::pi;
  if (dist == "gaussian")
    return { -8.0, 8.0, 1601, FrequencyGrid(two_pi / 16.8, 256) };
  if (dist == "comb")
    return { -4.0, 5.0, 3601, FrequencyGrid(two_pi / 9.45, 512) };
  if (dist == "cauchy")
    return { -200.0, 200.0, 4001, FrequencyGrid(two_pi / 420.0, 2048) };
  throw InvalidInput("eval_settings: no benchmark conventions for '" + dist +
                     "'");
}

//! Integrated square error of a curve against the truth: trapezoid integral
//! of (estimate - truth)^2 over the grid, plus the analytic tail term
//! (the estimate is zero off-grid, so the tail contributes the truth's
//! squared mass there).
inline double ise(const DensityCurve& estimate, const Distribution& truth)
{
  const double tail = truth.pdf_sq_outside(estimate.x_min(), estimate.x_max());
  if (tail > 1e-4)
    throw RangeTooNarrow(tail);
  const auto& f = estimate.f();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - truth.pdf(estimate.x(i));
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    s += w * d * d;
  }
  return s * estimate.dx() + tail;
}

//! Fourier-route ISE via Parseval: (1/2pi) [ trapz |spec - phi|^2 over the
//! grid + the truth's squared spectral mass beyond the grid ].
inline double ise_fourier(const SpectralEstimate& spec, const Distribution& truth)
{
  const auto& grid = spec.grid();
  const auto& values = spec.values();
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = std::abs(values[i] - truth.cf(grid.node(i)));
    const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
    s += w * d * d;
  }
  s *= grid.dt();
  const double t_max = grid.t_max();
  const double tail = 2.0 * detail::integrate_half_line([&](double u) {
    return std::norm(truth.cf(t_max + u));
  });
  return (s + tail) / (2.0 * std::numbers::pi);
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

//! One replicate's ISE for a named estimator; the ECF is shared across
//! estimators of the same replicate.
inline double estimator_ise(const std::string& name,
                            const Sample& sample,
                            const EcfTable& ecf,
                            const Distribution& truth,
                            const EvalSettings& es)
{
  const std::size_t n = sample.n();
  if (name == "sc") {
    const SpectralEstimate spec = sc_spectral(ecf, n);
    return ise(inverse_transform(spec, es.x_min, es.x_max, es.x_count), truth);
  }
  if (name == "kg") {
    KernelSpec spec{ KernelSpec::Kind::gaussian, kg_bandwidth(sample), nullptr };
    return ise(kernel_estimate(ecf, n, spec, es.x_min, es.x_max, es.x_count),
               truth);
  }
  if (name == "kt") {
    // average the per-replicate errors over c^2 in {1/4, 1/2, 1, 2, 4}
    const double c2s[] = { 0.25, 0.5, 1.0, 2.0, 4.0 };
    double acc = 0.0;
    for (double c2 : c2s) {
      KernelSpec spec{ KernelSpec::Kind::flat_top, kt_bandwidth(ecf, n, c2),
                       nullptr };
      acc += ise(kernel_estimate(ecf, n, spec, es.x_min, es.x_max, es.x_count),
                 truth);
    }
    return acc / 5.0;
  }
  if (name == "apt")
    return ise(adaptive_estimate(sample, es.x_min, es.x_max, es.x_count), truth);
  if (name == "opt") {
    KernelSpec spec{ KernelSpec::Kind::optimal_oracle, 0.0, &truth };
    return ise(kernel_estimate(ecf, n, spec, es.x_min, es.x_max, es.x_count),
               truth);
  }
  if (name == "truth") {
    std::vector<double> f(es.x_count);
    const double dx = (es.x_max - es.x_min) / static_cast<double>(es.x_count - 1);
    for (std::size_t i = 0; i < es.x_count; ++i)
      f[i] = truth.pdf(es.x_min + static_cast<double>(i) * dx);
    return ise(DensityCurve(es.x_min, es.x_max, std::move(f)), truth);
  }
  throw InvalidInput("unknown estimator '" + name + "'");
}

} // namespace detail

//! Monte Carlo MISE measurement. Replicate r of cell (distribution, n)
//! draws from a dedicated seed stream, so every estimator in the plan sees
//! the same samples (paired comparison) and the output is bit-identical
//! for any thread count and estimator order.
inline std::vector<BenchmarkRecord> run_benchmark(const BenchmarkPlan& plan)
{
  if (plan.replicates < 2)
    throw InvalidInput("run_benchmark: need at least 2 replicates");
  for (std::size_t i = 1; i < plan.n_list.size(); ++i)
    if (plan.n_list[i] <= plan.n_list[i - 1])
      throw InvalidInput("run_benchmark: n_list must be strictly increasing");

  const auto truth = distribution_by_name(plan.distribution);
  const EvalSettings es = eval_settings(plan.distribution);
  const std::uint64_t dist_tag =
    Rng::stream_seed(plan.seed, detail::fnv1a(plan.distribution));

  const std::size_t reps = plan.replicates;
  const std::size_t cells = plan.n_list.size();
  // ises[cell][estimator][replicate]
  std::vector<std::vector<std::vector<double>>> ises(
    cells, std::vector<std::vector<double>>(
             plan.estimators.size(), std::vector<double>(reps, 0.0)));
  std::vector<std::string> failure(cells * reps);

  parallel_for(cells * reps, [&](std::size_t task) {
    const std::size_t ci = task / reps;
    const std::size_t r = task % reps;
    try {
      const std::size_t n = plan.n_list[ci];
      Rng rng(Rng::stream_seed(Rng::stream_seed(dist_tag, n), r));
      const Sample sample(truth->draw(rng, n));
      const EcfTable ecf = ecf_evaluate(sample, es.grid);
      for (std::size_t e = 0; e < plan.estimators.size(); ++e)
        ises[ci][e][r] =
          detail::estimator_ise(plan.estimators[e], sample, ecf, *truth, es);
    } catch (const std::exception& ex) {
      failure[task] = ex.what();
    }
  });

  for (std::size_t task = 0; task < failure.size(); ++task)
    if (!failure[task].empty())
      throw NumericalError("benchmark cell n=" +
                           std::to_string(plan.n_list[task / reps]) +
                           " replicate " + std::to_string(task % reps) +
                           " failed: " + failure[task]);

  std::vector<BenchmarkRecord> out;
  for (std::size_t ci = 0; ci < cells; ++ci) {
    for (std::size_t e = 0; e < plan.estimators.size(); ++e) {
      const auto& xs = ises[ci][e];
      double mean = 0.0;
      for (double v : xs)
        mean += v;
      mean /= static_cast<double>(reps);
      double css = 0.0;
      for (double v : xs)
        css += (v - mean) * (v - mean);
      const double se =
        std::sqrt(css / static_cast<double>(reps - 1) / static_cast<double>(reps));
      out.push_back(BenchmarkRecord{ plan.distribution, plan.estimators[e],
                                     plan.n_list[ci], mean, se, reps,
                                     plan.seed });
    }
  }
  return out;
}

struct ScalingFit
{
  double alpha = 0.0;
  double alpha_stderr = 0.0;
};

//! OLS of ln(mise_mean) on ln(n); alpha is minus the slope.
inline ScalingFit fit_scaling(const std::vector<BenchmarkRecord>& records)
{
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    bool dup = false;
    for (double x : xs)
      dup = dup || x == std::log(static_cast<double>(r.n));
    if (dup)
      continue;
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(r.mise_mean));
  }
  if (xs.size() < 3)
    throw InsufficientPoints(xs.size());
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - my - slope * (xs[i] - mx);
    rss += resid * resid;
  }
  const double se =
    xs.size() > 2 ? std::sqrt(rss / (k - 2.0) / sxx) : 0.0;
  return ScalingFit{ -slope, se };
}

struct SensitivityRow
{
  double factor = 1.0;
  double mean_rel_change = 0.0;
  std::size_t failures = 0;
};

//! Relative L2 change of the self-consistent estimate when the cutoff t*
//! is rescaled by each factor, averaged over seeded replicates. Replicates
//! whose rescaled cutoff leaves the grid are counted as failures.
inline std::vector<SensitivityRow> sensitivity_study(
  const Distribution& dist,
  std::size_t n,
  std::size_t replicates,
  const std::vector<double>& factors,
  std::uint64_t seed)
{
  for (double f : factors)
    if (!(f > 0.0))
      throw InvalidInput("sensitivity_study: factors must be positive");
  const EvalSettings es = eval_settings(dist.name());
  const std::uint64_t tag = Rng::stream_seed(seed, detail::fnv1a(dist.name()));

  std::vector<std::vector<double>> changes(factors.size());
  std::vector<std::vector<std::uint8_t>> failed(
    factors.size(), std::vector<std::uint8_t>(replicates, 0));
  for (auto& c : changes)
    c.assign(replicates, 0.0);

  parallel_for(replicates, [&](std::size_t r) {
    Rng rng(Rng::stream_seed(tag, r));
    const Sample sample(dist.draw(rng, n));
    const FrequencyGrid grid = default_grid(sample);
    const EcfTable ecf = ecf_evaluate(sample, grid);
    const SpectralEstimate base = sc_spectral(ecf, n);
    const DensityCurve f1 =
      inverse_transform(base, es.x_min, es.x_max, es.x_count);
    double norm1 = 0.0;
    for (double v : f1.f())
      norm1 += v * v;
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
      ScConfig cfg;
      cfg.tstar_override = factors[fi] * base.t_star();
      try {
        const SpectralEstimate alt = sc_spectral(ecf, n, cfg);
        const DensityCurve f2 =
          inverse_transform(alt, es.x_min, es.x_max, es.x_count);
        double diff = 0.0;
        for (std::size_t i = 0; i < f1.size(); ++i)
          diff += (f1.f()[i] - f2.f()[i]) * (f1.f()[i] - f2.f()[i]);
        changes[fi][r] = std::sqrt(diff / norm1);
      } catch (const OverrideOutOfGrid&) {
        failed[fi][r] = 1;
      }
    }
  });

  std::vector<SensitivityRow> out;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    SensitivityRow row;
    row.factor = factors[fi];
    std::size_t ok = 0;
    for (std::size_t r = 0; r < replicates; ++r) {
      if (failed[fi][r]) {
        ++row.failures;
      } else {
        row.mean_rel_change += changes[fi][r];
        ++ok;
      }
    }
    if (ok > 0)
      row.mean_rel_change /= static_cast<double>(ok);
    out.push_back(row);
  }
  return out;
}

} // namespace scde
