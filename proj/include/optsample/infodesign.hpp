// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "optsample/information_matrix.hpp"
#include "optsample/schedule.hpp"
#include "optsample/signals.hpp"

namespace optsample {

/// Cell-midpoint grid t_l = (l + 1/2) T/L, l = 0..L-1. Spacing is exactly
/// T/L and the implied cells tile [0, T], so uniform weights plus in-cell
/// jitter reproduce the continuous uniform density exactly.
std::vector<double> midpoint_grid(double horizon, int points);

/// Discretized sampling density on [0, horizon]: strictly increasing grid
/// times with nonnegative weights summing to one.
class DesignMeasure {
 public:
  DesignMeasure(std::vector<double> grid, std::vector<double> weights, double horizon);

  static DesignMeasure uniform(double horizon, int points);

  int size() const noexcept { return static_cast<int>(grid_.size()); }
  double horizon() const noexcept { return horizon_; }
  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> grid_;
  std::vector<double> weights_;
  double horizon_;
};

/// Expected information matrix R_0 = N sum_l w_l psi(t_l) psi(t_l)^H.
/// The diagonal equals N exactly for any measure.
InformationMatrix expected_info(const DesignMeasure& measure, const FrequencyBasis& basis,
                                double n);

/// Realized Gram matrix R_N of a schedule, without input scaling.
InformationMatrix schedule_info(const FrequencyBasis& basis, const SamplingSchedule& schedule);

struct DoptimalResult {
  DesignMeasure measure;
  double kw_statistic;   // max_l psi^H M(w)^{-1} psi at the returned weights
  double log_det;        // log det of the unit-mass information matrix M(w)
  int iterations;
  bool converged;        // Kiefer-Wolfowitz tolerance met within max_iters
  std::vector<double> log_det_history;
};

/// Maximizes log det sum_l w_l psi(t_l) psi(t_l)^H over the weight simplex by
/// alternating multiplicative reweighting with vertex-exchange steps whose
/// step length maximizes the scalar log-det gain. Stops once
/// max_l psi^H M^{-1} psi <= (2M+1)(1 + kw_tol); otherwise returns the best
/// iterate with converged = false.
DoptimalResult doptimal_density(const FrequencyBasis& basis, const std::vector<double>& grid,
                                double horizon, int max_iters, double kw_tol);

struct GreedyTrace {
  std::vector<int> selection_order;    // grid indices in pick order
  std::vector<double> gains;           // s_k(t) of each pick
  std::vector<double> log_det;         // log det R_k after each pick (ridge included)
};

/// Deterministic schedule built greedily on a midpoint grid of L points:
/// starting from R = ridge I, repeatedly picks the unused grid time
/// maximizing s_k(t) = psi(t)^H R_k^{-1} psi(t) and applies the rank-one
/// update. Each grid point is selectable once, which bounds the inter-sample
/// spacing below by T/L. Ties go to the earliest grid time.
SamplingSchedule greedy_schedule(const FrequencyBasis& basis, double horizon, int grid_points,
                                 int n, double ridge, GreedyTrace* trace = nullptr);

/// log det(R + psi psi^H) - log det(R) = log(1 + psi^H R^{-1} psi).
/// R must be positive definite.
double logdet_gain(const InformationMatrix& r, const Eigen::VectorXcd& psi);

/// N i.i.d. draws from the discretized density: inverse-CDF over the grid
/// weights plus uniform jitter inside the selected grid cell. Sorted output,
/// deterministic for a given seed.
SamplingSchedule sample_schedule(const DesignMeasure& measure, int n, std::uint64_t seed);

/// Two-column CSV (time, weight).
void save_measure_csv(const DesignMeasure& measure, const std::string& path);
DesignMeasure load_measure_csv(const std::string& path, double horizon);

}  // namespace optsample
