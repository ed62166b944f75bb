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

// Subcommand implementations behind the `pevclock` binary. Each returns a
// process exit code: 0 all checks passed, 1 a statistical or numerical
// self-check failed, 2 configuration error, 3 runtime error. Every run
// writes a manifest (key = value lines) describing inputs, outputs and
// outcome; timestamps appear only there, never in data files.

#ifndef PEVCLOCK_CLI_HPP_
#define PEVCLOCK_CLI_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pevclock/config.hpp"

namespace pevclock {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct CliOptions {
  std::string config_path;  // empty: built-in defaults
  std::optional<std::uint64_t> seed;
  std::optional<long> trajectories;
  std::optional<int> threads;
  bool engine = false;
  std::string out_dir = ".";
};

struct FiguresOptions {
  std::string which = "all";  // fig1 | fig2 | all
  std::vector<double> p_list = {0.1, 0.25, 0.5};
  long ell_hi = 40;
};

// Solves the configured temporal eigenproblem, writes eigenpairs.csv,
// prints a level table, and self-checks orthonormality and residuals.
int run_solve_temporal(const CliOptions& options);

// Samples click trajectories (closed-form runner, or the general engine
// with --engine plus an equivalence check), writes statistics.csv and the
// comparison report, optionally dumps trajectories.
int run_simulate(const CliOptions& options);

// Writes the closed-form figure tables.
int run_figures(const CliOptions& options, const FiguresOptions& figures);

}  // namespace pevclock

#endif  // PEVCLOCK_CLI_HPP_
