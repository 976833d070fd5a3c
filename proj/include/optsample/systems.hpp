// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "optsample/rng.hpp"
#include "optsample/schedule.hpp"
#include "optsample/signals.hpp"

namespace optsample {

/// Proper rational transfer function G(p) = num(p)/den(p) with real
/// coefficients stored in ascending powers of p. The denominator must be
/// Hurwitz (all roots with real part < -1e-9) so a steady state exists.
class RationalTransferFunction {
 public:
  RationalTransferFunction(std::vector<double> numerator, std::vector<double> denominator);

  std::span<const double> numerator() const noexcept { return num_; }
  std::span<const double> denominator() const noexcept { return den_; }

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

/// Roots of a real polynomial given in ascending coefficient order, via the
/// companion matrix. Exposed for testability.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

/// G(j omega). Conjugate symmetric in omega since the coefficients are real.
std::complex<double> freq_response(const RationalTransferFunction& g, double omega);

/// FRF values [G(0), G(+j w1), G(-j w1), ...] in the shared column ordering.
Eigen::VectorXcd true_theta(const RationalTransferFunction& g, const FrequencyBasis& basis);

/// Steady-state response to the multisine, evaluated analytically from the
/// FRF: G(0) a0 + sum_m |G(j w_m)| a_m cos(w_m t + phi_m + arg G(j w_m)).
double steady_state_output(const RationalTransferFunction& g, const Multisine& u, double t);

struct MeasurementRecord {
  SamplingSchedule schedule;
  Eigen::VectorXd outputs;  // y_k = x(t_k) + e_k, same length as the schedule
  double noise_sigma;
  std::uint64_t seed;
};

/// Noisy steady-state measurements with i.i.d. zero-mean noise of standard
/// deviation sigma. Deterministic for a given seed.
MeasurementRecord simulate_measurements(const RationalTransferFunction& g, const Multisine& u,
                                        const SamplingSchedule& schedule, double sigma,
                                        std::uint64_t seed,
                                        NoiseKind kind = NoiseKind::gaussian);

}  // namespace optsample
