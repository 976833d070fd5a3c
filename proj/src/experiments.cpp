// SPDX-License-Identifier: Apache-2.0
#include "optsample/experiments.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>

#include "optsample/csv.hpp"
#include "optsample/errors.hpp"
#include "optsample/estimator.hpp"
#include "optsample/infodesign.hpp"
#include "optsample/parallel.hpp"

namespace optsample {

namespace {

// Stream labels keeping schedule draws, noise draws and bound-sweep draws on
// disjoint substreams of the campaign seed.
constexpr std::uint64_t kStreamNoise = 0x6e6f6973ULL;
constexpr std::uint64_t kStreamSchedule = 0x73636864ULL;
constexpr std::uint64_t kStreamBound = 0x626f756eULL;

double logdet_hermitian(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw RankDeficientError(std::numeric_limits<double>::infinity(),
                             "information matrix is numerically singular");
  return eig.eigenvalues().array().log().sum();
}

std::string sanitize(const std::string& ref) {
  std::string stem = std::filesystem::path(ref).stem().string();
  for (char& ch : stem)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  return stem.empty() ? std::string("measure") : stem;
}

struct CellAccumulator {
  Eigen::VectorXcd mean;
  double trace_cov = 0.0;
  double mean_info_density = 0.0;
  int included = 0;
};

CellAccumulator reduce_runs(const std::vector<std::optional<Eigen::VectorXcd>>& thetas,
                            const std::vector<double>& info_density, int dimension) {
  CellAccumulator acc;
  acc.mean = Eigen::VectorXcd::Zero(dimension);
  for (std::size_t r = 0; r < thetas.size(); ++r) {
    if (!thetas[r]) continue;
    acc.mean += *thetas[r];
    acc.mean_info_density += info_density[r];
    ++acc.included;
  }
  if (acc.included == 0) return acc;
  acc.mean /= acc.included;
  acc.mean_info_density /= acc.included;
  Eigen::VectorXd var = Eigen::VectorXd::Zero(dimension);
  for (const auto& theta : thetas)
    if (theta) var += (*theta - acc.mean).cwiseAbs2();
  // coordinate-wise complex variance E|theta_i - mean_i|^2; trace = sum
  acc.trace_cov = var.sum() / acc.included;
  return acc;
}

}  // namespace

std::string StrategySpec::name() const {
  switch (kind) {
    case StrategyKind::uniform: return "uniform";
    case StrategyKind::greedy: return "greedy";
    case StrategyKind::random_density: return "random_density_" + sanitize(density_ref);
  }
  return "unknown";
}

StrategySpec StrategySpec::parse(const std::string& token) {
  if (token == "uniform") return StrategySpec{StrategyKind::uniform, ""};
  if (token == "greedy") return StrategySpec{StrategyKind::greedy, ""};
  const std::string prefix = "random_density(";
  if (token.rfind(prefix, 0) == 0 && token.back() == ')') {
    std::string ref = token.substr(prefix.size(), token.size() - prefix.size() - 1);
    if (ref.empty()) throw std::invalid_argument("random_density needs a density reference");
    return StrategySpec{StrategyKind::random_density, ref};
  }
  throw std::invalid_argument("unknown strategy '" + token + "'");
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("config: runs must be at least one");
  if (!(horizon > 0.0)) throw std::invalid_argument("config: horizon must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("config: sigma must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("config: delta must lie in (0, 1)");
  if (grid_points < 2 * input.harmonic_count() + 1)
    throw std::invalid_argument("config: grid_points must be at least 2M+1");
  if (!(ridge > 0.0)) throw std::invalid_argument("config: ridge must be positive");
  if (strategies.empty()) throw std::invalid_argument("config: at least one strategy required");
  for (int n : n_sweep)
    if (n <= 2 * input.harmonic_count())
      throw std::invalid_argument("config: every sweep size must exceed 2M");
}

MonteCarloSummary run_montecarlo(const ExperimentConfig& config) {
  config.validate();
  const FrequencyBasis basis = FrequencyBasis::from_multisine(config.input);
  const int c = basis.dimension();
  const int m = basis.harmonic_count();
  const Eigen::VectorXcd theta_true = true_theta(config.plant, basis);
  const Eigen::VectorXcd amplitude = amplitude_matrix(config.input);
  const double amp_inv_sq_sum = amplitude.cwiseAbs2().cwiseInverse().sum();

  std::vector<int> sweep = config.n_sweep;
  std::sort(sweep.begin(), sweep.end());

  // The D-optimized density doubles as the bound-sweep design; solve it once.
  std::optional<DesignMeasure> doptimal;
  const auto doptimal_measure = [&]() -> const DesignMeasure& {
    if (!doptimal) {
      DoptimalResult result =
          doptimal_density(basis, midpoint_grid(config.horizon, config.grid_points),
                           config.horizon, config.density_max_iters, config.kw_tol);
      doptimal = std::move(result.measure);
    }
    return *doptimal;
  };

  const auto resolve_density = [&](const std::string& ref) -> DesignMeasure {
    if (ref == "uniform") return DesignMeasure::uniform(config.horizon, config.grid_points);
    if (ref == "doptimal") return doptimal_measure();
    return load_measure_csv(ref, config.horizon);
  };

  MonteCarloSummary summary;

  for (std::size_t si = 0; si < config.strategies.size(); ++si) {
    const StrategySpec& strategy = config.strategies[si];
    std::optional<DesignMeasure> measure;
    if (strategy.kind == StrategyKind::random_density)
      measure = resolve_density(strategy.density_ref);

    for (int n : sweep) {
      std::optional<SamplingSchedule> fixed;
      if (strategy.kind == StrategyKind::uniform) {
        fixed = uniform_schedule(config.horizon, n);
      } else if (strategy.kind == StrategyKind::greedy) {
        fixed = greedy_schedule(basis, config.horizon, config.grid_points, n, config.ridge);
      }
      std::optional<RegressionSystem> fixed_reg;
      if (fixed) fixed_reg = build_regression(config.input, *fixed);

      std::vector<std::optional<Eigen::VectorXcd>> thetas(static_cast<std::size_t>(config.runs));
      std::vector<double> info_density(static_cast<std::size_t>(config.runs), 0.0);
      std::optional<SamplingSchedule> first_draw;

      parallel_for(
          config.runs,
          [&](int run) {
            const std::uint64_t run_u = static_cast<std::uint64_t>(run);
            const std::uint64_t n_u = static_cast<std::uint64_t>(n);
            std::optional<SamplingSchedule> drawn;
            const SamplingSchedule* schedule = fixed ? &*fixed : nullptr;
            if (!schedule) {
              drawn = sample_schedule(
                  *measure, n,
                  mix_seed({config.seed, kStreamSchedule, static_cast<std::uint64_t>(si), n_u,
                            run_u}));
              schedule = &*drawn;
              if (run == 0) first_draw = *drawn;
            }
            // noise stream excludes the strategy index: strategies face the
            // same noise realization at equal (N, run)
            const MeasurementRecord record = simulate_measurements(
                config.plant, config.input, *schedule, config.sigma,
                mix_seed({config.seed, kStreamNoise, n_u, run_u}), config.noise);
            std::optional<RegressionSystem> local_reg;
            if (!fixed_reg) local_reg = build_regression(config.input, *schedule);
            const RegressionSystem& reg = fixed_reg ? *fixed_reg : *local_reg;
            try {
              FrfEstimate estimate = ls_estimate(reg, record.outputs);
              info_density[static_cast<std::size_t>(run)] = std::exp(
                  logdet_hermitian(fim(reg).entries()) - c * std::log(static_cast<double>(n)));
              thetas[static_cast<std::size_t>(run)] = std::move(estimate.theta_hat);
            } catch (const RankDeficientError&) {
              // run excluded; counted below
            }
          },
          config.threads);

      const CellAccumulator acc = reduce_runs(thetas, info_density, c);
      const int excluded = config.runs - acc.included;
      if (excluded > 0.01 * config.runs)
        throw std::runtime_error("campaign failed: " + std::to_string(excluded) + " of " +
                                 std::to_string(config.runs) + " runs rank deficient for " +
                                 strategy.name() + " at N=" + std::to_string(n));

      const InformationMatrix r0 =
          strategy.kind == StrategyKind::uniform
              ? expected_info(DesignMeasure::uniform(config.horizon, config.grid_points), basis,
                              n)
          : strategy.kind == StrategyKind::greedy
              ? schedule_info(basis, *fixed)
              : expected_info(*measure, basis, n);
      const double t = solve_t(BernsteinParams(m, n, config.delta));
      const double lambda_min = min_eigenvalue_hermitian(r0.entries());
      std::optional<double> bound_trace;
      if (t < lambda_min)
        bound_trace = config.sigma * config.sigma / (lambda_min - t) * amp_inv_sq_sum;

      CellSummary cell;
      cell.strategy = strategy.name();
      cell.sample_count = n;
      cell.trace_cov = acc.trace_cov;
      cell.mean_info_density = acc.mean_info_density;
      cell.bias_norm = (acc.mean - theta_true).norm();
      cell.bound_t = t;
      cell.lambda_min_r0 = lambda_min;
      cell.bound_trace = bound_trace;
      cell.excluded_runs = excluded;
      summary.cells.push_back(std::move(cell));

      const SamplingSchedule& representative = fixed ? *fixed : *first_draw;
      summary.schedules.emplace_back(strategy.name() + "_" + std::to_string(n), representative);
    }
  }

  // Bound sweep: the concentration bound evaluated on the leakage-suppressing
  // (D-optimized) density, next to the covariance actually observed when
  // sampling from it.
  for (int n : sweep) {
    const DesignMeasure& measure = doptimal_measure();
    const InformationMatrix r0 = expected_info(measure, basis, n);
    const double t = solve_t(BernsteinParams(m, n, config.delta));
    const double lambda_min = min_eigenvalue_hermitian(r0.entries());
    std::optional<double> bound_trace;
    if (t < lambda_min)
      bound_trace = config.sigma * config.sigma / (lambda_min - t) * amp_inv_sq_sum;

    std::vector<std::optional<Eigen::VectorXcd>> thetas(static_cast<std::size_t>(config.runs));
    std::vector<double> unused(static_cast<std::size_t>(config.runs), 0.0);
    parallel_for(
        config.runs,
        [&](int run) {
          const std::uint64_t run_u = static_cast<std::uint64_t>(run);
          const std::uint64_t n_u = static_cast<std::uint64_t>(n);
          const SamplingSchedule schedule =
              sample_schedule(measure, n, mix_seed({config.seed, kStreamBound, n_u, run_u}));
          const MeasurementRecord record = simulate_measurements(
              config.plant, config.input, schedule, config.sigma,
              mix_seed({config.seed, kStreamNoise, n_u, run_u}), config.noise);
          const RegressionSystem reg = build_regression(config.input, schedule);
          try {
            thetas[static_cast<std::size_t>(run)] = ls_estimate(reg, record.outputs).theta_hat;
          } catch (const RankDeficientError&) {
          }
        },
        config.threads);
    const CellAccumulator acc = reduce_runs(thetas, unused, c);

    summary.bound_sweep.push_back(BoundSweepRow{static_cast<double>(n), config.delta, t,
                                                lambda_min, bound_trace, acc.trace_cov});
  }

  return summary;
}

void emit_results(const MonteCarloSummary& summary, const std::string& output_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + output_dir);
  const auto join = [&](const std::string& name) { return (fs::path(output_dir) / name).string(); };

  std::vector<std::string> fig1{"strategy,N,trace_cov"};
  std::vector<std::string> fig2{"strategy,N,mean_info_density"};
  for (const CellSummary& cell : summary.cells) {
    fig1.push_back(cell.strategy + "," + std::to_string(cell.sample_count) + "," +
                   csv::format_metric(cell.trace_cov));
    fig2.push_back(cell.strategy + "," + std::to_string(cell.sample_count) + "," +
                   csv::format_metric(cell.mean_info_density));
  }
  csv::write_lines(join("fig1_variance.csv"), fig1);
  csv::write_lines(join("fig2_infodensity.csv"), fig2);

  std::vector<std::string> bounds{"N,delta,t,lambda_min_R0,bound_trace,empirical_trace"};
  for (const BoundSweepRow& row : summary.bound_sweep) {
    bounds.push_back(csv::format_metric(row.sample_count) + "," + csv::format_metric(row.delta) +
                     "," + csv::format_metric(row.t) + "," + csv::format_metric(row.lambda_min_r0) +
                     "," + (row.bound_trace ? csv::format_metric(*row.bound_trace) : "vacuous") +
                     "," + csv::format_metric(row.empirical_trace));
  }
  csv::write_lines(join("bounds.csv"), bounds);

  for (const auto& [key, schedule] : summary.schedules)
    save_schedule_csv(schedule, join("schedule_" + key + ".csv"));
}

}  // namespace optsample
