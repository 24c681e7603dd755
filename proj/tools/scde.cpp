// Command-line front end: density estimation, ECF dumps, sampling,
// Monte Carlo benchmarks, theoretical reference curves, and cutoff
// sensitivity studies. Exit codes: 0 success, 2 invalid input or flags,
// 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scde/bench.hpp"
#include "scde/distributions.hpp"
#include "scde/ecf.hpp"
#include "scde/io.hpp"
#include "scde/kernels.hpp"
#include "scde/model.hpp"
#include "scde/sc.hpp"
#include "scde/theory.hpp"

namespace {

struct EstimateArgs
{
  std::string input;
  std::string output;
  std::string diagnostics;
  std::string method = "sc";
  std::string dist; // oracle spectrum for --method opt
  double c2 = 1.0;
  std::size_t grid_points = 1024;
  double padding = 3.0;
  double half_fraction = 0.5;
  double tstar = 0.0;
  bool correct_neg = false;
  double x_min = 0.0, x_max = 0.0;
  bool have_x_min = false, have_x_max = false;
  std::size_t x_count = 512;
};

void write_diagnostics(const std::string& path, const scde::ScDiagnostics& d,
                       std::optional<double> bandwidth = {})
{
  auto out = scde::open_output(path);
  out << "key,value\n";
  out << "n," << d.n << "\n";
  out << "dt," << scde::format_g17(d.dt) << "\n";
  out << "t_star," << scde::format_g17(d.t_star) << "\n";
  out << "threshold," << scde::format_g17(d.threshold) << "\n";
  out << "accepted_count," << d.accepted_count << "\n";
  out << "negative_mass," << scde::format_g17(d.negative_mass) << "\n";
  if (bandwidth)
    out << "bandwidth," << scde::format_g17(*bandwidth) << "\n";
  for (const auto& w : d.warnings)
    out << "warning," << w << "\n";
}

int run_estimate(const EstimateArgs& a)
{
  const scde::Sample sample(scde::read_sample_file(a.input));
  const std::size_t n = sample.n();

  scde::ScOptions opts;
  opts.grid_points = a.grid_points;
  opts.padding = a.padding;
  if (a.have_x_min)
    opts.x_min = a.x_min;
  if (a.have_x_max)
    opts.x_max = a.x_max;
  opts.x_count = a.x_count;

  if (a.method == "sc") {
    scde::ScConfig cfg;
    cfg.half_fraction = a.half_fraction;
    if (a.tstar > 0.0)
      cfg.tstar_override = a.tstar;
    cfg.correct_negative = a.correct_neg;
    const scde::ScResult result = scde::sc_estimate(sample, cfg, opts);
    scde::write_density_csv(a.output, result.density);
    if (!a.diagnostics.empty())
      write_diagnostics(a.diagnostics, result.diagnostics);
    for (const auto& w : result.diagnostics.warnings)
      std::cerr << "warning: " << w << "\n";
    return 0;
  }

  const scde::FrequencyGrid grid =
    scde::default_grid(sample, a.grid_points, a.padding);
  const double range = sample.range() > 0.0 ? sample.range() : 1.0;
  const double x_min = a.have_x_min ? a.x_min : sample.min() - 0.2 * range;
  const double x_max = a.have_x_max ? a.x_max : sample.max() + 0.2 * range;

  std::vector<std::string> warnings;
  scde::DensityCurve curve(0.0, 1.0, std::vector<double>(2, 0.0));
  std::optional<double> bandwidth;
  double t_star = grid.t_max();
  std::size_t accepted = grid.size();

  if (a.method == "apt") {
    curve = scde::adaptive_estimate(sample, x_min, x_max, a.x_count, &warnings);
  } else {
    const scde::EcfTable ecf = scde::ecf_evaluate(sample, grid);
    scde::KernelSpec spec;
    std::unique_ptr<scde::Distribution> oracle;
    if (a.method == "kg") {
      spec.kind = scde::KernelSpec::Kind::gaussian;
      spec.bandwidth = scde::kg_bandwidth(sample, &warnings);
    } else if (a.method == "kt") {
      spec.kind = scde::KernelSpec::Kind::flat_top;
      spec.bandwidth = scde::kt_bandwidth(ecf, n, a.c2);
    } else if (a.method == "opt") {
      if (a.dist.empty())
        throw scde::InvalidInput("--method opt requires --dist");
      oracle = scde::distribution_by_name(a.dist);
      spec.kind = scde::KernelSpec::Kind::optimal_oracle;
      spec.oracle = oracle.get();
    } else {
      throw scde::InvalidInput("unknown method '" + a.method + "'");
    }
    const scde::SpectralEstimate se = scde::kernel_spectral(ecf, n, spec);
    accepted = se.accepted_count();
    curve = scde::inverse_transform(se, x_min, x_max, a.x_count);
    if (spec.bandwidth > 0.0)
      bandwidth = spec.bandwidth;
  }

  if (a.correct_neg)
    curve = scde::correct_negative(curve);
  scde::write_density_csv(a.output, curve);
  if (!a.diagnostics.empty()) {
    scde::ScDiagnostics d;
    d.n = n;
    d.dt = grid.dt();
    d.t_star = t_star;
    d.threshold = scde::sc_threshold(n);
    d.accepted_count = accepted;
    d.negative_mass = curve.negative_mass();
    d.warnings = warnings;
    write_diagnostics(a.diagnostics, d, bandwidth);
  }
  for (const auto& w : warnings)
    std::cerr << "warning: " << w << "\n";
  return 0;
}

double theory_value(const std::string& dist, const std::string& bound,
                    std::size_t n)
{
  if (bound == "opt") {
    if (dist == "gaussian")
      return scde::gauss_opt_error_closed(n);
    if (dist == "cauchy")
      return scde::cauchy_opt_error_closed(n);
    return scde::min_error_numeric(*scde::distribution_by_name(dist), n);
  }
  if (bound == "kg") {
    const double scale = std::pow(static_cast<double>(n), -0.2);
    if (dist == "gaussian")
      return scde::gauss_kg_error_closed(n, 1.06 * scale);
    if (dist == "cauchy")
      return scde::cauchy_kg_error_closed(n, 1.58 * scale);
    throw scde::InvalidInput("kg bound is only available for gaussian/cauchy");
  }
  if (bound == "ml") {
    if (dist == "gaussian")
      return scde::gauss_ml_error(n);
    throw scde::InvalidInput("ml bound is only available for gaussian");
  }
  throw scde::InvalidInput("unknown bound '" + bound + "'");
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Self-consistent spectral density estimation" };
  app.require_subcommand(1);

  EstimateArgs ea;
  auto* est = app.add_subcommand("estimate", "Estimate a density from a sample file");
  est->add_option("--input", ea.input, "Input file, one float per line")->required();
  est->add_option("--output", ea.output, "Output CSV (x,f)")->required();
  est->add_option("--diagnostics", ea.diagnostics, "Diagnostics CSV (key,value)");
  est->add_option("--method", ea.method, "sc|kg|kt|apt|opt")->default_val("sc");
  est->add_option("--dist", ea.dist, "True distribution for --method opt");
  est->add_option("--c2", ea.c2, "Threshold constant for --method kt");
  est->add_option("--grid-points", ea.grid_points, "Frequency nodes per side");
  est->add_option("--padding", ea.padding, "Grid period / data range");
  est->add_option("--half-fraction", ea.half_fraction, "Accepted-node fraction for t*");
  est->add_option("--tstar", ea.tstar, "Override the cutoff t*");
  est->add_flag("--correct-negative", ea.correct_neg, "Clip negative values");
  est->add_option("--x-min", ea.x_min)->each([&](const std::string&) { ea.have_x_min = true; });
  est->add_option("--x-max", ea.x_max)->each([&](const std::string&) { ea.have_x_max = true; });
  est->add_option("--x-count", ea.x_count, "Output grid size");

  std::string ecf_input, ecf_output;
  std::size_t ecf_points = 1024;
  double ecf_padding = 3.0;
  auto* ecf_cmd = app.add_subcommand("ecf", "Dump the empirical characteristic function");
  ecf_cmd->add_option("--input", ecf_input)->required();
  ecf_cmd->add_option("--output", ecf_output)->required();
  ecf_cmd->add_option("--grid-points", ecf_points);
  ecf_cmd->add_option("--padding", ecf_padding);

  std::string sm_dist, sm_output;
  std::size_t sm_n = 0;
  std::uint64_t sm_seed = 0;
  auto* sm = app.add_subcommand("sample", "Draw a seeded sample from a test density");
  sm->add_option("--dist", sm_dist, "gaussian|cauchy|comb|box|chisq1")->required();
  sm->add_option("--n", sm_n)->required();
  sm->add_option("--seed", sm_seed)->required();
  sm->add_option("--output", sm_output)->required();

  scde::BenchmarkPlan plan;
  std::string bm_output;
  bool bm_theory = false;
  bool bm_seed_set = false;
  auto* bm = app.add_subcommand("benchmark", "Monte Carlo MISE measurement");
  bm->add_option("--dist", plan.distribution)->required();
  bm->add_option("--estimators", plan.estimators, "Comma list of sc,kg,kt,apt,opt,truth")
    ->delimiter(',');
  bm->add_option("--n-list", plan.n_list)->delimiter(',');
  bm->add_option("--reps", plan.replicates);
  bm->add_option("--seed", plan.seed)->required()->each(
    [&](const std::string&) { bm_seed_set = true; });
  bm->add_option("--output", bm_output)->required();
  bm->add_flag("--theory", bm_theory, "Append theoretical reference rows");

  std::string th_dist, th_bound, th_output;
  std::vector<std::size_t> th_nlist;
  auto* th = app.add_subcommand("theory", "Theoretical error curves");
  th->add_option("--dist", th_dist, "gaussian|cauchy|comb")->required();
  th->add_option("--bound", th_bound, "opt|kg|ml")->required();
  th->add_option("--n-list", th_nlist)->delimiter(',')->required();
  th->add_option("--output", th_output)->required();

  std::string sv_dist, sv_output;
  std::size_t sv_n = 1000, sv_reps = 50;
  std::uint64_t sv_seed = 0;
  std::vector<double> sv_factors = { 0.5, 1.5 };
  auto* sv = app.add_subcommand("sensitivity", "Cutoff sensitivity study");
  sv->add_option("--dist", sv_dist)->required();
  sv->add_option("--n", sv_n);
  sv->add_option("--reps", sv_reps);
  sv->add_option("--factors", sv_factors)->delimiter(',');
  sv->add_option("--seed", sv_seed)->required();
  sv->add_option("--output", sv_output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (est->parsed())
      return run_estimate(ea);

    if (ecf_cmd->parsed()) {
      const scde::Sample sample(scde::read_sample_file(ecf_input));
      const auto grid = scde::default_grid(sample, ecf_points, ecf_padding);
      scde::write_ecf_csv(ecf_output, scde::ecf_evaluate(sample, grid));
      return 0;
    }

    if (sm->parsed()) {
      const auto dist = scde::distribution_by_name(sm_dist);
      scde::Rng rng(sm_seed);
      const auto values = dist->draw(rng, sm_n);
      auto out = scde::open_output(sm_output);
      for (double v : values)
        out << scde::format_g17(v) << "\n";
      return 0;
    }

    if (bm->parsed()) {
      auto records = scde::run_benchmark(plan);
      if (bm_theory) {
        for (std::size_t n : plan.n_list) {
          for (const char* bound : { "opt", "kg", "ml" }) {
            try {
              records.push_back(scde::BenchmarkRecord{
                plan.distribution, std::string("theory_") + bound, n,
                theory_value(plan.distribution, bound, n), 0.0, 0, plan.seed });
            } catch (const scde::InvalidInput&) {
              // bound not defined for this distribution
            }
          }
        }
      }
      scde::write_records_csv(bm_output, records);
      return 0;
    }

    if (th->parsed()) {
      auto out = scde::open_output(th_output);
      out << "n,value\n";
      for (std::size_t n : th_nlist)
        out << n << "," << scde::format_g17(theory_value(th_dist, th_bound, n))
            << "\n";
      return 0;
    }

    if (sv->parsed()) {
      const auto dist = scde::distribution_by_name(sv_dist);
      const auto rows =
        scde::sensitivity_study(*dist, sv_n, sv_reps, sv_factors, sv_seed);
      auto out = scde::open_output(sv_output);
      out << "factor,mean_rel_change,failures\n";
      for (const auto& r : rows)
        out << scde::format_g17(r.factor) << ","
            << scde::format_g17(r.mean_rel_change) << "," << r.failures << "\n";
      return 0;
    }
  } catch (const scde::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const scde::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
