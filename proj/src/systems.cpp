// SPDX-License-Identifier: Apache-2.0
#include "optsample/systems.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace optsample {

namespace {

// Stability margin: a denominator root with real part above this is rejected.
constexpr double kHurwitzMargin = -1e-9;

std::vector<double> trim_trailing_zeros(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  return coeffs;
}

std::complex<double> horner(std::span<const double> coeffs, std::complex<double> s) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
  return acc;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  c = trim_trailing_zeros(std::move(c));
  const std::size_t degree = c.size() - 1;
  if (degree == 0) return {};
  if (c.back() == 0.0) throw std::invalid_argument("leading polynomial coefficient is zero");

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < degree; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) =
        -c[i] / c.back();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("companion eigenvalue computation failed");
  std::vector<std::complex<double>> roots(degree);
  for (std::size_t i = 0; i < degree; ++i) roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return roots;
}

RationalTransferFunction::RationalTransferFunction(std::vector<double> numerator,
                                                   std::vector<double> denominator)
    : num_(trim_trailing_zeros(std::move(numerator))),
      den_(trim_trailing_zeros(std::move(denominator))) {
  for (double v : num_)
    if (!std::isfinite(v)) throw std::invalid_argument("numerator coefficients must be finite");
  for (double v : den_)
    if (!std::isfinite(v)) throw std::invalid_argument("denominator coefficients must be finite");
  if (num_.empty() || den_.empty())
    throw std::invalid_argument("transfer function polynomials must be nonempty");
  if (den_.back() == 0.0)
    throw std::invalid_argument("denominator leading coefficient must be nonzero");
  if (num_.size() > den_.size())
    throw std::invalid_argument("transfer function must be proper (deg num <= deg den)");
  for (const auto& root : polynomial_roots(den_))
    if (root.real() > kHurwitzMargin)
      throw std::invalid_argument("denominator must be Hurwitz (no pole with Re >= -1e-9)");
}

std::complex<double> freq_response(const RationalTransferFunction& g, double omega) {
  const std::complex<double> s(0.0, omega);
  const std::complex<double> den = horner(g.denominator(), s);
  if (std::abs(den) < 1e-300)
    throw std::domain_error("transfer function denominator vanishes on the imaginary axis");
  return horner(g.numerator(), s) / den;
}

Eigen::VectorXcd true_theta(const RationalTransferFunction& g, const FrequencyBasis& basis) {
  Eigen::VectorXcd theta(basis.dimension());
  for (int i = 0; i < basis.dimension(); ++i) theta(i) = freq_response(g, basis[i]);
  return theta;
}

double steady_state_output(const RationalTransferFunction& g, const Multisine& u, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  double x = freq_response(g, 0.0).real() * u.offset();
  for (const auto& c : u.components()) {
    const std::complex<double> gain = freq_response(g, c.omega);
    x += std::abs(gain) * c.amplitude * std::cos(c.omega * t + c.phase + std::arg(gain));
  }
  return x;
}

MeasurementRecord simulate_measurements(const RationalTransferFunction& g, const Multisine& u,
                                        const SamplingSchedule& schedule, double sigma,
                                        std::uint64_t seed, NoiseKind kind) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("noise standard deviation must be nonnegative and finite");
  Eigen::VectorXd y(schedule.size());
  SplitMix64 rng(seed);
  for (int k = 0; k < schedule.size(); ++k)
    y(k) = steady_state_output(g, u, schedule[k]) + noise_sample(rng, sigma, kind);
  return MeasurementRecord{schedule, std::move(y), sigma, seed};
}

}  // namespace optsample
