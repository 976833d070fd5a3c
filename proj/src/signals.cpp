// SPDX-License-Identifier: Apache-2.0
#include "optsample/signals.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace optsample {

Multisine::Multisine(double offset, std::vector<MultisineComponent> components)
    : offset_(offset), components_(std::move(components)) {
  if (!std::isfinite(offset_) || offset_ == 0.0)
    throw std::invalid_argument("multisine offset must be finite and nonzero");
  for (const auto& c : components_) {
    if (!std::isfinite(c.amplitude) || c.amplitude == 0.0)
      throw std::invalid_argument("multisine amplitudes must be finite and nonzero");
    if (!std::isfinite(c.omega) || c.omega <= 0.0)
      throw std::invalid_argument("multisine frequencies must be finite and strictly positive");
    if (!std::isfinite(c.phase))
      throw std::invalid_argument("multisine phases must be finite");
  }
  for (std::size_t i = 0; i < components_.size(); ++i)
    for (std::size_t j = i + 1; j < components_.size(); ++j)
      if (components_[i].omega == components_[j].omega)
        throw std::invalid_argument("multisine frequencies must be pairwise distinct");
}

FrequencyBasis::FrequencyBasis(std::vector<double> frequencies)
    : frequencies_(std::move(frequencies)) {
  const std::size_t c = frequencies_.size();
  if (c == 0 || c % 2 == 0)
    throw std::invalid_argument("frequency basis must have odd dimension 2M+1");
  if (frequencies_[0] != 0.0)
    throw std::invalid_argument("frequency basis must start with the zero frequency");
  for (std::size_t m = 0; 2 * m + 2 < c; ++m) {
    const double pos = frequencies_[2 * m + 1];
    const double neg = frequencies_[2 * m + 2];
    if (!std::isfinite(pos) || pos <= 0.0)
      throw std::invalid_argument("frequency basis pair entries must be positive and finite");
    if (neg != -pos)
      throw std::invalid_argument("frequency basis entries must come in (+w, -w) pairs");
    for (std::size_t k = 0; k < m; ++k)
      if (frequencies_[2 * k + 1] == pos)
        throw std::invalid_argument("frequency basis frequencies must be pairwise distinct");
  }
}

FrequencyBasis FrequencyBasis::from_multisine(const Multisine& u) {
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(2 * u.harmonic_count() + 1));
  f.push_back(0.0);
  for (const auto& c : u.components()) {
    f.push_back(c.omega);
    f.push_back(-c.omega);
  }
  return FrequencyBasis(std::move(f));
}

double eval_multisine(const Multisine& u, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  double value = u.offset();
  for (const auto& c : u.components()) value += c.amplitude * std::cos(c.omega * t + c.phase);
  return value;
}

Eigen::VectorXcd regressor_psi(const FrequencyBasis& basis, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  Eigen::VectorXcd psi(basis.dimension());
  for (int i = 0; i < basis.dimension(); ++i) psi(i) = std::polar(1.0, basis[i] * t);
  return psi;
}

Eigen::VectorXcd amplitude_matrix(const Multisine& u) {
  Eigen::VectorXcd a(2 * u.harmonic_count() + 1);
  a(0) = u.offset();
  int i = 1;
  for (const auto& c : u.components()) {
    const std::complex<double> half = std::polar(c.amplitude / 2.0, c.phase);
    a(i++) = half;
    a(i++) = std::conj(half);
  }
  return a;
}

Eigen::VectorXcd regressor_phi(const Multisine& u, const FrequencyBasis& basis, double t) {
  if (basis.harmonic_count() != u.harmonic_count())
    throw std::invalid_argument("basis and multisine dimensions do not match");
  return amplitude_matrix(u).cwiseProduct(regressor_psi(basis, t));
}

}  // namespace optsample
