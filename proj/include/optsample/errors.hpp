// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace optsample {

/// Thrown when the regression matrix is numerically rank deficient, i.e. its
/// spectral condition number exceeds kRankDeficientCondition. Signals a
/// degenerate sampling schedule (duplicated times or too few distinct points).
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(double condition, const std::string& what)
      : std::runtime_error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

inline constexpr double kRankDeficientCondition = 1e12;

}  // namespace optsample
