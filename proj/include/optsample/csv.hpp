// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace optsample::csv {

/// Fixed "%.12g" rendering for metric output; identical values give identical
/// bytes, which the campaign determinism contract relies on.
std::string format_metric(double v);

/// Fixed "%.17g" rendering; round-trips a double exactly through parsing.
std::string format_exact(double v);

/// Writes lines joined by '\n' (with trailing newline). I/O failures surface
/// as std::runtime_error carrying the path.
void write_lines(const std::string& path, const std::vector<std::string>& lines);

/// Reads comma-separated rows, skipping blank lines. No quoting support; the
/// file formats used here never need it.
std::vector<std::vector<std::string>> read_rows(const std::string& path);

/// Parses a floating point field; throws with path context on garbage.
double parse_double(const std::string& field, const std::string& path);

}  // namespace optsample::csv
