// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace optsample {

struct MultisineComponent {
  double omega;      // rad/s, strictly positive
  double amplitude;  // nonzero
  double phase;      // rad
};

/// Multisine excitation u(t) = a0 + sum_m a_m cos(w_m t + phi_m).
/// Every amplitude, offset included, must be nonzero and the component
/// frequencies positive and pairwise distinct.
class Multisine {
 public:
  Multisine(double offset, std::vector<MultisineComponent> components);

  double offset() const noexcept { return offset_; }
  std::span<const MultisineComponent> components() const noexcept { return components_; }
  int harmonic_count() const noexcept { return static_cast<int>(components_.size()); }

 private:
  double offset_;
  std::vector<MultisineComponent> components_;
};

/// Excited-frequency list [0, +w1, -w1, ..., +wM, -wM] in rad/s.
/// This column ordering is shared by every matrix and parameter vector in the
/// project; dimension is always 2M+1.
class FrequencyBasis {
 public:
  explicit FrequencyBasis(std::vector<double> frequencies);

  static FrequencyBasis from_multisine(const Multisine& u);

  int dimension() const noexcept { return static_cast<int>(frequencies_.size()); }
  int harmonic_count() const noexcept { return (dimension() - 1) / 2; }
  double operator[](int i) const { return frequencies_[static_cast<std::size_t>(i)]; }
  std::span<const double> frequencies() const noexcept { return frequencies_; }

 private:
  std::vector<double> frequencies_;
};

double eval_multisine(const Multisine& u, double t);

/// psi(t) with entries e^{j beta_l t}; all entries have unit modulus.
Eigen::VectorXcd regressor_psi(const FrequencyBasis& basis, double t);

/// Diagonal of the input matrix A in Phi = Psi A:
/// (a0, (a1/2) e^{+j phi1}, (a1/2) e^{-j phi1}, ...). Invertible whenever the
/// multisine invariants hold.
Eigen::VectorXcd amplitude_matrix(const Multisine& u);

/// Regressor phi(t) = A psi(t) of the linear model y(t) = phi(t)^T theta + e.
Eigen::VectorXcd regressor_phi(const Multisine& u, const FrequencyBasis& basis, double t);

}  // namespace optsample
