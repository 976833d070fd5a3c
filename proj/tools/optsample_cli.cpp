// SPDX-License-Identifier: Apache-2.0
//
// Command line front end: schedule design, simulation, estimation, the Monte
// Carlo campaign and covariance-bound queries, all driven by one config file.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "optsample/bounds.hpp"
#include "optsample/config.hpp"
#include "optsample/csv.hpp"
#include "optsample/errors.hpp"
#include "optsample/estimator.hpp"
#include "optsample/experiments.hpp"
#include "optsample/infodesign.hpp"

namespace {

using namespace optsample;

DesignMeasure resolve_density(const ExperimentConfig& config, const std::string& ref,
                              bool* converged = nullptr) {
  if (converged) *converged = true;
  if (ref == "uniform") return DesignMeasure::uniform(config.horizon, config.grid_points);
  if (ref == "doptimal") {
    const FrequencyBasis basis = FrequencyBasis::from_multisine(config.input);
    DoptimalResult result =
        doptimal_density(basis, midpoint_grid(config.horizon, config.grid_points),
                         config.horizon, config.density_max_iters, config.kw_tol);
    if (converged) *converged = result.converged;
    return result.measure;
  }
  return load_measure_csv(ref, config.horizon);
}

int run_design_greedy(const std::string& config_path, int n, const std::string& out) {
  const ExperimentConfig config = load_config(config_path);
  const FrequencyBasis basis = FrequencyBasis::from_multisine(config.input);
  const SamplingSchedule schedule =
      greedy_schedule(basis, config.horizon, config.grid_points, n, config.ridge);
  if (!out.empty()) {
    save_schedule_csv(schedule, out);
    std::cout << "wrote " << schedule.size() << " sampling times to " << out << "\n";
  } else {
    for (double t : schedule.times()) std::cout << csv::format_exact(t) << "\n";
  }
  return 0;
}

int run_design_density(const std::string& config_path, const std::string& out) {
  const ExperimentConfig config = load_config(config_path);
  const FrequencyBasis basis = FrequencyBasis::from_multisine(config.input);
  const DoptimalResult result =
      doptimal_density(basis, midpoint_grid(config.horizon, config.grid_points), config.horizon,
                       config.density_max_iters, config.kw_tol);
  std::cout << "kw_statistic=" << csv::format_metric(result.kw_statistic)
            << " target<=" << csv::format_metric(basis.dimension() * (1.0 + config.kw_tol))
            << " log_det=" << csv::format_metric(result.log_det)
            << " iterations=" << result.iterations << "\n";
  if (!out.empty()) {
    save_measure_csv(result.measure, out);
    std::cout << "wrote design measure to " << out << "\n";
  }
  if (!result.converged) {
    std::cerr << "design density did not reach the Kiefer-Wolfowitz tolerance within "
              << config.density_max_iters << " iterations\n";
    return 1;
  }
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& schedule_path,
                 std::optional<std::uint64_t> seed, const std::string& out) {
  const ExperimentConfig config = load_config(config_path);
  const SamplingSchedule schedule = load_schedule_csv(schedule_path, config.horizon);
  const MeasurementRecord record =
      simulate_measurements(config.plant, config.input, schedule, config.sigma,
                            seed.value_or(config.seed), config.noise);
  std::vector<std::string> lines{"y"};
  for (int k = 0; k < record.outputs.size(); ++k)
    lines.push_back(csv::format_exact(record.outputs(k)));
  if (!out.empty()) {
    csv::write_lines(out, lines);
    std::cout << "wrote " << record.outputs.size() << " measurements to " << out << "\n";
  } else {
    for (const auto& line : lines) std::cout << line << "\n";
  }
  return 0;
}

Eigen::VectorXd load_column(const std::string& path) {
  std::vector<double> values;
  for (const auto& row : csv::read_rows(path)) {
    if (row.size() != 1) throw std::runtime_error("expected a single column in " + path);
    if (row[0] == "y") continue;  // header
    values.push_back(csv::parse_double(row[0], path));
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) y(static_cast<Eigen::Index>(i)) = values[i];
  return y;
}

int run_estimate(const std::string& config_path, const std::string& schedule_path,
                 const std::string& data_path, const std::string& out) {
  const ExperimentConfig config = load_config(config_path);
  const SamplingSchedule schedule = load_schedule_csv(schedule_path, config.horizon);
  const RegressionSystem reg = build_regression(config.input, schedule);
  const FrfEstimate estimate = ls_estimate(reg, load_column(data_path));
  std::cout << "condition=" << csv::format_metric(estimate.condition_estimate)
            << " residual=" << csv::format_metric(estimate.residual_norm) << "\n";
  if (!out.empty()) {
    save_frf_csv(estimate, out);
    std::cout << "wrote FRF estimate to " << out << "\n";
  } else {
    for (int i = 0; i < estimate.basis.dimension(); ++i)
      std::cout << csv::format_metric(estimate.basis[i]) << ": "
                << csv::format_metric(estimate.theta_hat(i).real()) << (estimate.theta_hat(i).imag() < 0 ? " - " : " + ")
                << csv::format_metric(std::abs(estimate.theta_hat(i).imag())) << "j\n";
  }
  return 0;
}

int run_montecarlo_cmd(const std::string& config_path) {
  const ExperimentConfig config = load_config(config_path);
  const MonteCarloSummary summary = run_montecarlo(config);
  emit_results(summary, config.output_dir);
  for (const CellSummary& cell : summary.cells) {
    std::cout << cell.strategy << " N=" << cell.sample_count
              << " trace_cov=" << csv::format_metric(cell.trace_cov)
              << " info_density=" << csv::format_metric(cell.mean_info_density)
              << " bias=" << csv::format_metric(cell.bias_norm);
    if (cell.excluded_runs > 0) std::cout << " excluded=" << cell.excluded_runs;
    std::cout << "\n";
  }
  std::cout << "results written to " << config.output_dir << "\n";
  return 0;
}

int run_bound(const std::string& config_path, int n, double delta, const std::string& density) {
  const ExperimentConfig config = load_config(config_path);
  const FrequencyBasis basis = FrequencyBasis::from_multisine(config.input);
  const DesignMeasure measure = resolve_density(config, density);
  const InformationMatrix r0 = expected_info(measure, basis, n);
  const BernsteinParams params(basis.harmonic_count(), n, delta);
  const double t = solve_t(params);
  const double lambda_min = min_eigenvalue_hermitian(r0.entries());
  const auto bound = covariance_bound(amplitude_matrix(config.input), r0, t, config.sigma);
  std::cout << "N=" << n << " delta=" << csv::format_metric(delta)
            << " t=" << csv::format_metric(t)
            << " lambda_min_R0=" << csv::format_metric(lambda_min) << "\n";
  if (!bound) {
    std::cout << "bound: vacuous (t >= lambda_min(R0) at this N and delta)\n";
  } else {
    // approximate (tail neglected): conditional on the concentration event
    std::cout << "bound_trace=" << csv::format_metric(bound->real().trace())
              << "  [approximate (tail neglected), holds with probability >= "
              << csv::format_metric(1.0 - delta) << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonuniform sampling design and FRF estimation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string schedule_path;
  std::string data_path;
  std::string density = "uniform";
  int n = 0;
  double delta = 0.1;
  std::optional<std::uint64_t> seed;

  auto* design = app.add_subcommand("design", "construct sampling schedules and densities");
  design->require_subcommand(1);
  auto* greedy = design->add_subcommand("greedy", "deterministic D-optimized schedule");
  greedy->add_option("--config", config_path, "experiment config file")->required();
  greedy->add_option("--n", n, "number of samples")->required();
  greedy->add_option("--out", out, "output schedule CSV");
  auto* density_cmd = design->add_subcommand("density", "D-optimal design measure");
  density_cmd->add_option("--config", config_path, "experiment config file")->required();
  density_cmd->add_option("--out", out, "output measure CSV");

  auto* simulate = app.add_subcommand("simulate", "one noisy measurement record");
  simulate->add_option("--config", config_path, "experiment config file")->required();
  simulate->add_option("--schedule", schedule_path, "schedule CSV")->required();
  simulate->add_option("--seed", seed, "noise seed (default: config seed)");
  simulate->add_option("--out", out, "output data CSV");

  auto* estimate = app.add_subcommand("estimate", "least-squares FRF estimate");
  estimate->add_option("--config", config_path, "experiment config file")->required();
  estimate->add_option("--schedule", schedule_path, "schedule CSV")->required();
  estimate->add_option("--data", data_path, "measurement CSV")->required();
  estimate->add_option("--out", out, "output FRF CSV");

  auto* montecarlo = app.add_subcommand("montecarlo", "full sampling-strategy comparison");
  montecarlo->add_option("--config", config_path, "experiment config file")->required();

  auto* bound = app.add_subcommand("bound", "high-probability covariance bound");
  bound->add_option("--config", config_path, "experiment config file")->required();
  bound->add_option("--n", n, "number of samples")->required();
  bound->add_option("--delta", delta, "failure probability")->required();
  bound->add_option("--density", density, "uniform | doptimal | measure CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (greedy->parsed()) return run_design_greedy(config_path, n, out);
    if (density_cmd->parsed()) return run_design_density(config_path, out);
    if (simulate->parsed()) return run_simulate(config_path, schedule_path, seed, out);
    if (estimate->parsed()) return run_estimate(config_path, schedule_path, data_path, out);
    if (montecarlo->parsed()) return run_montecarlo_cmd(config_path);
    if (bound->parsed()) return run_bound(config_path, n, delta, density);
  } catch (const RankDeficientError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
