// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

namespace optsample {

/// Ordered sampling instants in [0, horizon]. Duplicate times are allowed by
/// the type (they are a legitimate degenerate input for the estimator), the
/// ordering is not.
class SamplingSchedule {
 public:
  SamplingSchedule(std::vector<double> times, double horizon);

  int size() const noexcept { return static_cast<int>(times_.size()); }
  double horizon() const noexcept { return horizon_; }
  std::span<const double> times() const noexcept { return times_; }
  double operator[](int k) const { return times_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<double> times_;
  double horizon_;
};

/// Evenly spaced baseline: t_k = (k-1) T/(N-1) for N >= 2 (both endpoints
/// included), t_1 = 0 for N = 1.
SamplingSchedule uniform_schedule(double horizon, int n);

/// Single-column CSV of times in seconds (header "time").
void save_schedule_csv(const SamplingSchedule& schedule, const std::string& path);
SamplingSchedule load_schedule_csv(const std::string& path, double horizon);

}  // namespace optsample
