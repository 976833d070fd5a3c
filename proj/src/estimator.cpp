// SPDX-License-Identifier: Apache-2.0
#include "optsample/estimator.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

#include "optsample/csv.hpp"
#include "optsample/errors.hpp"

namespace optsample {

namespace {

// Exactly Hermitian Gram matrix m^H m via a rank update of the lower triangle.
Eigen::MatrixXcd gram(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(m.cols(), m.cols());
  g.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint(), 1.0);
  return Eigen::MatrixXcd(g.selfadjointView<Eigen::Lower>());
}

}  // namespace

RegressionSystem::RegressionSystem(FrequencyBasis basis, Eigen::MatrixXcd psi,
                                   Eigen::VectorXcd amplitude)
    : basis_(std::move(basis)), psi_(std::move(psi)), amplitude_(std::move(amplitude)) {
  if (psi_.cols() != basis_.dimension() || amplitude_.size() != basis_.dimension())
    throw std::invalid_argument("regression system dimensions do not match the basis");
  if (psi_.rows() < 1) throw std::invalid_argument("regression system needs at least one row");
  phi_ = psi_ * amplitude_.asDiagonal();
}

RegressionSystem build_regression(const Multisine& u, const SamplingSchedule& schedule) {
  FrequencyBasis basis = FrequencyBasis::from_multisine(u);
  const int c = basis.dimension();
  Eigen::MatrixXcd psi(schedule.size(), c);
  for (int k = 0; k < schedule.size(); ++k) {
    const double t = schedule[k];
    for (int i = 0; i < c; ++i) psi(k, i) = std::polar(1.0, basis[i] * t);
  }
  return RegressionSystem(std::move(basis), std::move(psi), amplitude_matrix(u));
}

FrfEstimate ls_estimate(const RegressionSystem& reg, const Eigen::VectorXd& y) {
  const int n = reg.sample_count();
  const int c = reg.basis().dimension();
  if (y.size() != n)
    throw std::invalid_argument("measurement vector length does not match the schedule");
  if (n <= 2 * reg.basis().harmonic_count())
    throw std::invalid_argument("least squares needs N > 2M measurements");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(reg.phi());

  // cond(Phi) from the singular values of the C x C triangular factor; R and
  // Phi share singular values up to the column permutation.
  const Eigen::MatrixXcd r = qr.matrixR().topRows(c).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
  const double s_max = svd.singularValues()(0);
  const double s_min = svd.singularValues()(c - 1);
  const double condition = s_min > 0.0 ? s_max / s_min : std::numeric_limits<double>::infinity();
  if (!(condition < kRankDeficientCondition))
    throw RankDeficientError(condition,
                             "regression matrix is numerically rank deficient (degenerate schedule)");

  const Eigen::VectorXcd yc = y.cast<std::complex<double>>();
  Eigen::VectorXcd theta = qr.solve(yc);
  const double residual = (yc - reg.phi() * theta).norm();
  return FrfEstimate{std::move(theta), reg.basis(), residual, condition};
}

InformationMatrix fim(const RegressionSystem& reg) {
  return InformationMatrix(gram(reg.phi()), reg.sample_count());
}

InformationMatrix psi_gram(const RegressionSystem& reg) {
  Eigen::MatrixXcd g = gram(reg.psi());
  // |psi_entry| == 1 identically, so the diagonal is the sample count.
  g.diagonal().setConstant(static_cast<double>(reg.sample_count()));
  return InformationMatrix(std::move(g), reg.sample_count());
}

void save_frf_csv(const FrfEstimate& estimate, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(estimate.basis.dimension()) + 1);
  lines.emplace_back("omega,re,im,magnitude,phase");
  for (int i = 0; i < estimate.basis.dimension(); ++i) {
    const std::complex<double> v = estimate.theta_hat(i);
    lines.push_back(csv::format_exact(estimate.basis[i]) + "," + csv::format_exact(v.real()) +
                    "," + csv::format_exact(v.imag()) + "," + csv::format_exact(std::abs(v)) +
                    "," + csv::format_exact(std::arg(v)));
  }
  csv::write_lines(path, lines);
}

}  // namespace optsample
