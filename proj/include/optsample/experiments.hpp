// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optsample/bounds.hpp"
#include "optsample/rng.hpp"
#include "optsample/signals.hpp"
#include "optsample/systems.hpp"

namespace optsample {

enum class StrategyKind { uniform, greedy, random_density };

/// One sampling strategy of the comparison study. For random_density the
/// reference names the density: "uniform", "doptimal", or a measure CSV path.
struct StrategySpec {
  StrategyKind kind = StrategyKind::uniform;
  std::string density_ref;

  std::string name() const;
  static StrategySpec parse(const std::string& token);
};

struct ExperimentConfig {
  RationalTransferFunction plant;
  Multisine input;
  double horizon = 0.0;
  std::vector<int> n_sweep;
  int runs = 1;
  double sigma = 0.0;
  NoiseKind noise = NoiseKind::gaussian;
  std::vector<StrategySpec> strategies;
  std::uint64_t seed = 0;
  int grid_points = 5000;
  double ridge = 1e-8;
  double delta = 0.1;
  double kw_tol = 1e-3;
  int density_max_iters = 20000;
  std::string output_dir = "results";
  int threads = 0;  // 0 = hardware concurrency; OPTSAMPLE_THREADS caps either way

  /// Enforces runs >= 1, horizon > 0 and every sweep size > 2M.
  void validate() const;
};

/// Aggregated Monte Carlo results for one (strategy, N) cell. The covariance
/// convention is coordinate-wise complex variance E|theta_i - mean_i|^2, with
/// trace_cov its sum over coordinates. bound_trace is empty when the
/// concentration bound is vacuous at this (N, delta).
struct CellSummary {
  std::string strategy;
  int sample_count = 0;
  double trace_cov = 0.0;
  double mean_info_density = 0.0;  // mean over runs of det(FIM/N)
  double bias_norm = 0.0;          // ||mean(theta_hat) - theta||
  double bound_t = 0.0;
  double lambda_min_r0 = 0.0;
  std::optional<double> bound_trace;
  int excluded_runs = 0;
};

struct MonteCarloSummary {
  std::vector<CellSummary> cells;            // strategy-major, N ascending
  std::vector<BoundSweepRow> bound_sweep;    // one row per sweep N
  // Representative schedule per cell (the deterministic schedule, or the
  // first-run draw for random strategies), keyed "strategy_N".
  std::vector<std::pair<std::string, SamplingSchedule>> schedules;
};

/// Runs the full campaign: every (strategy, N) cell with `runs` paired noise
/// realizations, plus a bound sweep on the D-optimal density. Noise streams
/// depend on (seed, N, run) only, so strategies see identical noise at equal
/// (N, run). Throws if more than 1% of the runs of any cell are excluded as
/// rank deficient.
MonteCarloSummary run_montecarlo(const ExperimentConfig& config);

/// Writes fig1_variance.csv, fig2_infodensity.csv, bounds.csv and one
/// schedule_<strategy>_<N>.csv per cell. Byte-stable for a fixed summary.
void emit_results(const MonteCarloSummary& summary, const std::string& output_dir);

}  // namespace optsample
