// SPDX-License-Identifier: Apache-2.0
#include "optsample/information_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <utility>

namespace optsample {

InformationMatrix::InformationMatrix(Eigen::MatrixXcd entries, double mass)
    : entries_(std::move(entries)), mass_(mass) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw std::invalid_argument("information matrix must be square and nonempty");
  if (!(mass_ > 0.0)) throw std::invalid_argument("information matrix mass must be positive");

  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-13 * scale)
    throw std::invalid_argument("information matrix must be Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(entries_, Eigen::EigenvaluesOnly);
  const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (eig.eigenvalues().minCoeff() < -1e-9 * norm)
    throw std::invalid_argument("information matrix must be positive semidefinite");
}

}  // namespace optsample
