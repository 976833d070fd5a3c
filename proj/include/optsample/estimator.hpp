// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <string>

#include "optsample/information_matrix.hpp"
#include "optsample/schedule.hpp"
#include "optsample/signals.hpp"

namespace optsample {

/// Stacked regression matrices for one schedule: Psi (unit-modulus complex
/// exponentials, one row per sample), the diagonal input matrix A and
/// Phi = Psi A.
class RegressionSystem {
 public:
  RegressionSystem(FrequencyBasis basis, Eigen::MatrixXcd psi, Eigen::VectorXcd amplitude);

  const FrequencyBasis& basis() const noexcept { return basis_; }
  const Eigen::MatrixXcd& psi() const noexcept { return psi_; }
  const Eigen::VectorXcd& amplitude() const noexcept { return amplitude_; }
  const Eigen::MatrixXcd& phi() const noexcept { return phi_; }
  int sample_count() const noexcept { return static_cast<int>(psi_.rows()); }

 private:
  FrequencyBasis basis_;
  Eigen::MatrixXcd psi_;
  Eigen::VectorXcd amplitude_;
  Eigen::MatrixXcd phi_;
};

RegressionSystem build_regression(const Multisine& u, const SamplingSchedule& schedule);

struct FrfEstimate {
  Eigen::VectorXcd theta_hat;
  FrequencyBasis basis;
  double residual_norm;        // ||y - Phi theta_hat||_2
  double condition_estimate;   // spectral condition number of Phi
};

/// Unconstrained complex least squares over theta, solved through a
/// column-pivoted Householder QR of Phi. Requires N > 2M; throws
/// RankDeficientError when cond(Phi) exceeds kRankDeficientCondition.
FrfEstimate ls_estimate(const RegressionSystem& reg, const Eigen::VectorXd& y);

/// Fisher information matrix Phi^H Phi.
InformationMatrix fim(const RegressionSystem& reg);

/// Input-independent Gram matrix R_N = Psi^H Psi. Its diagonal is N by
/// construction (the rows have unit modulus), so it is stored exactly.
InformationMatrix psi_gram(const RegressionSystem& reg);

/// One row per basis frequency: omega, re, im, magnitude, phase.
void save_frf_csv(const FrfEstimate& estimate, const std::string& path);

}  // namespace optsample
