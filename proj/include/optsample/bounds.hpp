// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "optsample/infodesign.hpp"
#include "optsample/information_matrix.hpp"
#include "optsample/signals.hpp"

namespace optsample {

/// Constants of the matrix concentration bound for a sum of N i.i.d. rank-one
/// regressor outer products of dimension 2M+1.
struct BernsteinParams {
  int harmonic_count;   // M
  double sample_count;  // N
  double delta;         // failure probability, in (0, 1)

  BernsteinParams(int m, double n, double failure_probability);

  int dimension() const noexcept { return 2 * harmonic_count + 1; }
  double r_const() const noexcept { return 2.0 * dimension(); }
  double v_const() const noexcept { return 4.0 * sample_count * dimension() * dimension(); }
};

/// Tail value (2M+1) exp(-(t^2/2)/(v + R t/3)); not clamped to 1, so it is a
/// trivial bound for small t.
double bernstein_tail_bound(const BernsteinParams& params, double t);

/// Positive deviation level t solving bernstein_tail_bound(t) = delta, in
/// closed form: t = Rc/3 + sqrt((Rc/3)^2 + 2vc) with c = ln((2M+1)/delta).
double solve_t(const BernsteinParams& params);

/// Smallest eigenvalue of a Hermitian matrix; rejects non-Hermitian input.
double min_eigenvalue_hermitian(const Eigen::MatrixXcd& matrix);

/// Largest absolute eigenvalue of a Hermitian matrix.
double spectral_norm_hermitian(const Eigen::MatrixXcd& matrix);

/// Coefficient 1/(lambda_min(R0) - t) of the high-probability identity bound
/// on R_N^{-1}. Empty when t >= lambda_min(R0): the bound is vacuous at this
/// (N, delta) and the caller must report that rather than clamp.
std::optional<double> rn_inverse_bound(const InformationMatrix& r0, double t);

/// Approximate high-probability covariance bound
/// sigma^2 A^{-1} (lambda_min(R0) - t)^{-1} A^{-H}. The rare-event tail is
/// neglected, so this is an approximation, not a hard bound; empty when
/// vacuous (same condition as rn_inverse_bound).
std::optional<Eigen::MatrixXcd> covariance_bound(const Eigen::VectorXcd& amplitude,
                                                 const InformationMatrix& r0, double t,
                                                 double sigma);

/// Draws `trials` schedules of n points from the measure and returns the
/// fraction with ||R_N - R_0||_2 exceeding t. Always at or below the
/// Bernstein tail value, usually far below it.
double bernstein_calibration(const FrequencyBasis& basis, const DesignMeasure& measure, int n,
                             double t, int trials, std::uint64_t seed, int threads = 0);

/// One row of a bound sweep report: the approximate covariance-bound trace
/// (empty = vacuous) next to the empirically observed covariance trace.
struct BoundSweepRow {
  double sample_count;
  double delta;
  double t;
  double lambda_min_r0;
  std::optional<double> bound_trace;
  double empirical_trace;
};

}  // namespace optsample
