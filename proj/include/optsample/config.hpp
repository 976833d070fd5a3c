// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "optsample/experiments.hpp"

namespace optsample {

/// Parses the flat key/value experiment config format:
///
///   key = value            # comment
///   key = [v1, v2, v3]     # arrays split on commas/whitespace
///   input.component = [omega, amplitude, phase]   # repeatable key
///
/// Unknown keys are rejected. See README.md for the full grammar and key
/// reference.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

}  // namespace optsample
