// SPDX-License-Identifier: Apache-2.0
#include "optsample/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "optsample/parallel.hpp"
#include "optsample/rng.hpp"

namespace optsample {

namespace {

void require_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("matrix must be square and nonempty");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("matrix must be Hermitian");
}

}  // namespace

BernsteinParams::BernsteinParams(int m, double n, double failure_probability)
    : harmonic_count(m), sample_count(n), delta(failure_probability) {
  if (m < 0) throw std::invalid_argument("harmonic count must be nonnegative");
  if (!(n >= 1.0)) throw std::invalid_argument("sample count must be at least one");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("failure probability must lie in (0, 1)");
}

double bernstein_tail_bound(const BernsteinParams& params, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("deviation level must be nonnegative");
  const double v = params.v_const();
  const double r = params.r_const();
  return params.dimension() * std::exp(-(t * t / 2.0) / (v + r * t / 3.0));
}

double solve_t(const BernsteinParams& params) {
  // (2M+1) exp(-(t^2/2)/(v + R t/3)) = delta  <=>  t^2 - (2cR/3) t - 2cv = 0
  // with c = ln((2M+1)/delta); the positive root is returned.
  const double c = std::log(params.dimension() / params.delta);
  const double a = params.r_const() * c / 3.0;
  return a + std::sqrt(a * a + 2.0 * params.v_const() * c);
}

double min_eigenvalue_hermitian(const Eigen::MatrixXcd& matrix) {
  require_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(matrix, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double spectral_norm_hermitian(const Eigen::MatrixXcd& matrix) {
  require_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(matrix, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

std::optional<double> rn_inverse_bound(const InformationMatrix& r0, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("deviation level must be nonnegative and finite");
  const double lambda_min = min_eigenvalue_hermitian(r0.entries());
  if (t >= lambda_min) return std::nullopt;  // vacuous at this (N, delta)
  return 1.0 / (lambda_min - t);
}

std::optional<Eigen::MatrixXcd> covariance_bound(const Eigen::VectorXcd& amplitude,
                                                 const InformationMatrix& r0, double t,
                                                 double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  if (amplitude.size() != r0.dimension())
    throw std::invalid_argument("amplitude dimension does not match the information matrix");
  if (amplitude.cwiseAbs().minCoeff() == 0.0)
    throw std::invalid_argument("amplitude matrix must be invertible");
  const auto coefficient = rn_inverse_bound(r0, t);
  if (!coefficient) return std::nullopt;
  const Eigen::VectorXd inv_sq = amplitude.cwiseAbs2().cwiseInverse();
  return Eigen::MatrixXcd((sigma * sigma * *coefficient * inv_sq).asDiagonal());
}

double bernstein_calibration(const FrequencyBasis& basis, const DesignMeasure& measure, int n,
                             double t, int trials, std::uint64_t seed, int threads) {
  if (trials < 100) throw std::invalid_argument("calibration needs at least 100 trials");
  if (n < 1) throw std::invalid_argument("calibration needs at least one sample per trial");
  const InformationMatrix r0 = expected_info(measure, basis, n);

  std::atomic<int> exceed{0};
  parallel_for(
      trials,
      [&](int trial) {
        const SamplingSchedule schedule =
            sample_schedule(measure, n, mix_seed({seed, 0x6b65726eULL, static_cast<std::uint64_t>(trial)}));
        const InformationMatrix rn = schedule_info(basis, schedule);
        const double deviation = spectral_norm_hermitian(rn.entries() - r0.entries());
        if (deviation >= t) exceed.fetch_add(1);
      },
      threads);
  return static_cast<double>(exceed.load()) / trials;
}

}  // namespace optsample
