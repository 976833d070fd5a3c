// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace optsample {

/// Hermitian positive semidefinite information matrix of size (2M+1)^2,
/// either a realized Gram matrix R_N or an expected one R_0. `mass` carries
/// the sample count N (or total design mass) the matrix was scaled by.
class InformationMatrix {
 public:
  InformationMatrix(Eigen::MatrixXcd entries, double mass);

  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  double mass() const noexcept { return mass_; }
  int dimension() const noexcept { return static_cast<int>(entries_.rows()); }

 private:
  Eigen::MatrixXcd entries_;
  double mass_;
};

}  // namespace optsample
