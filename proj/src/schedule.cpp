// SPDX-License-Identifier: Apache-2.0
#include "optsample/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "optsample/csv.hpp"

namespace optsample {

SamplingSchedule::SamplingSchedule(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw std::invalid_argument("schedule horizon must be positive and finite");
  if (times_.empty()) throw std::invalid_argument("schedule must contain at least one time");
  if (!std::is_sorted(times_.begin(), times_.end()))
    throw std::invalid_argument("schedule times must be sorted ascending");
  if (times_.front() < 0.0 || times_.back() > horizon_)
    throw std::invalid_argument("schedule times must lie in [0, horizon]");
}

SamplingSchedule uniform_schedule(double horizon, int n) {
  if (n < 1) throw std::invalid_argument("schedule needs at least one sample");
  std::vector<double> times(static_cast<std::size_t>(n));
  if (n == 1) {
    times[0] = 0.0;
  } else {
    for (int k = 0; k < n; ++k) times[static_cast<std::size_t>(k)] = horizon * k / (n - 1);
  }
  return SamplingSchedule(std::move(times), horizon);
}

void save_schedule_csv(const SamplingSchedule& schedule, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(schedule.size()) + 1);
  lines.emplace_back("time");
  for (double t : schedule.times()) lines.push_back(csv::format_exact(t));
  csv::write_lines(path, lines);
}

SamplingSchedule load_schedule_csv(const std::string& path, double horizon) {
  std::vector<double> times;
  for (const auto& row : csv::read_rows(path)) {
    if (row.size() != 1) throw std::runtime_error("expected a single column in " + path);
    if (row[0] == "time") continue;  // header
    times.push_back(csv::parse_double(row[0], path));
  }
  return SamplingSchedule(std::move(times), horizon);
}

}  // namespace optsample
