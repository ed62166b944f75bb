// Copyright 2026 The pevclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration: an INI-style file of [section] key = value lines.
// Parsing is strict: malformed lines, unknown keys, and out-of-range
// values raise ConfigError with file:line context. See the README for
// the full key reference.

#ifndef PEVCLOCK_CONFIG_HPP_
#define PEVCLOCK_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pevclock/montecarlo.hpp"
#include "pevclock/analytics.hpp"

namespace pevclock {

struct TemporalConfig {
  double inertia = 1.0;   // m_T
  double omega = 1.0;
  PotentialKind potential = PotentialKind::kHarmonic;
  double well_half_width = 1.0;
  double well_height = 50.0;
  double grid_half_width = 0.0;  // 0 = auto (12 / sqrt(inertia * omega))
  long grid_points = 4096;
  int n_states = 1;
  double clock_resolution = 0.1;  // warn when an envelope is wider than this
};

struct ClockConfig {
  double gamma = 0.78539816339744830962;  // pi/4
  std::vector<double> energies = {0.0, 1.0};
  int temporal_levels = 2;  // engine-mode truncation L
  OverlapMode overlap = OverlapMode::kUnitApproximation;
  double group_tol = 1e-9;
};

struct RunSection {
  long trajectories = 100000;
  long max_steps = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  bool stop_at_first_click = true;
  bool dump_trajectories = false;
  ComparisonLaw law = ComparisonLaw::kFirstClickGeometric;
  ComparisonThresholds thresholds;
};

struct RunConfig {
  TemporalConfig temporal;
  ClockConfig clock;
  XiDistribution xi;
  RunSection run;

  // Key = value snapshot of every setting, for manifests.
  std::vector<std::pair<std::string, std::string>> snapshot() const;
};

RunConfig default_run_config();

// Parses and validates `path`. Unknown sections/keys, syntax errors and
// out-of-range values raise ConfigError mentioning file, line and key.
RunConfig load_run_config(const std::string& path);

}  // namespace pevclock

#endif  // PEVCLOCK_CONFIG_HPP_
