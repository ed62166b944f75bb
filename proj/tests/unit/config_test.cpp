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

#include "pevclock/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

namespace pevclock {
namespace {

std::string write_config_file(const std::string& name,
                              const std::string& text) {
  const auto path =
      std::filesystem::temp_directory_path() / ("pevclock_cfg_" + name);
  std::ofstream out(path);
  out << text;
  return path.string();
}

// Loads `text` and returns the ConfigError message it must raise.
std::string error_from(const std::string& name, const std::string& text) {
  const std::string path = write_config_file(name, text);
  try {
    (void)load_run_config(path);
  } catch (const ConfigError& e) {
    return e.what();
  }
  FAIL("expected ConfigError for " << name);
  return "";
}

TEST_CASE("defaults are the documented baseline") {
  const RunConfig cfg = default_run_config();
  CHECK(cfg.clock.gamma == doctest::Approx(0.78539816339744830962));
  CHECK(cfg.clock.energies == std::vector<double>{0.0, 1.0});
  CHECK(cfg.clock.temporal_levels == 2);
  CHECK(cfg.clock.overlap == OverlapMode::kUnitApproximation);
  CHECK(cfg.temporal.potential == PotentialKind::kHarmonic);
  CHECK(cfg.temporal.grid_points == 4096);
  CHECK(cfg.temporal.n_states == 1);
  CHECK(cfg.xi.kind == XiKind::kExponential);
  CHECK(cfg.xi.mean == 0.01);
  CHECK(cfg.run.trajectories == 100000);
  CHECK(cfg.run.seed == 1);
  CHECK(cfg.run.threads == 1);
  CHECK(cfg.run.stop_at_first_click);
  CHECK(cfg.run.law == ComparisonLaw::kFirstClickGeometric);
  CHECK(cfg.run.thresholds.tv_max == 0.01);
}

TEST_CASE("a full file overrides every default") {
  const std::string path = write_config_file("full.ini", R"(
# top comment
[temporal]
inertia = 2.0
omega = 0.5            ; inline comment
potential = square_well
well_half_width = 1.5
well_height = 80
grid_half_width = 6.0
grid_points = 512
n_states = 3
clock_resolution = 0.2

[clock]
gamma = 0.3
energies = 0.0, 0.7, 1.9
temporal_levels = 4
overlap = exact
group_tol = 1e-8

[xi]
kind = half_normal
mean = 0.02

[run]
trajectories = 500
max_steps = 200
seed = 18446744073709551615
threads = 4
stop_at_first_click = false
dump_trajectories = true
law = length_weighted
tv_threshold = 0.05
z_threshold = 5.0
min_clicks = 10
)");
  const RunConfig cfg = load_run_config(path);
  CHECK(cfg.temporal.inertia == 2.0);
  CHECK(cfg.temporal.omega == 0.5);
  CHECK(cfg.temporal.potential == PotentialKind::kSquareWell);
  CHECK(cfg.temporal.well_half_width == 1.5);
  CHECK(cfg.temporal.well_height == 80.0);
  CHECK(cfg.temporal.grid_half_width == 6.0);
  CHECK(cfg.temporal.grid_points == 512);
  CHECK(cfg.temporal.n_states == 3);
  CHECK(cfg.temporal.clock_resolution == 0.2);
  CHECK(cfg.clock.gamma == 0.3);
  CHECK(cfg.clock.energies == std::vector<double>{0.0, 0.7, 1.9});
  CHECK(cfg.clock.temporal_levels == 4);
  CHECK(cfg.clock.overlap == OverlapMode::kExactGrid);
  CHECK(cfg.clock.group_tol == 1e-8);
  CHECK(cfg.xi.kind == XiKind::kHalfNormal);
  CHECK(cfg.xi.mean == 0.02);
  CHECK(cfg.run.trajectories == 500);
  CHECK(cfg.run.max_steps == 200);
  CHECK(cfg.run.seed == 18446744073709551615ull);
  CHECK(cfg.run.threads == 4);
  CHECK_FALSE(cfg.run.stop_at_first_click);
  CHECK(cfg.run.dump_trajectories);
  CHECK(cfg.run.law == ComparisonLaw::kLengthWeighted);
  CHECK(cfg.run.thresholds.tv_max == 0.05);
  CHECK(cfg.run.thresholds.z_max == 5.0);
  CHECK(cfg.run.thresholds.min_clicks == 10);
}

TEST_CASE("a partial file keeps the remaining defaults") {
  const std::string path = write_config_file("partial.ini",
                                             "[clock]\ngamma = 0.1\n");
  const RunConfig cfg = load_run_config(path);
  CHECK(cfg.clock.gamma == 0.1);
  CHECK(cfg.temporal.grid_points == 4096);
  CHECK(cfg.run.trajectories == 100000);
}

TEST_CASE("parser errors carry file and line context") {
  // Missing file: point at the path itself.
  try {
    (void)load_run_config("/no/such/pevclock.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
  }

  std::string msg = error_from("nosection.ini", "gamma = 0.3\n");
  CHECK(msg.find("outside any [section]") != std::string::npos);
  CHECK(msg.find(":1") != std::string::npos);

  msg = error_from("noequals.ini", "[clock]\ngamma 0.3\n");
  CHECK(msg.find("expected 'key = value'") != std::string::npos);
  CHECK(msg.find(":2") != std::string::npos);

  msg = error_from("badheader.ini", "[clock\ngamma = 0.3\n");
  CHECK(msg.find("malformed section header") != std::string::npos);

  msg = error_from("dup.ini", "[clock]\ngamma = 0.1\ngamma = 0.2\n");
  CHECK(msg.find("duplicate key 'clock.gamma'") != std::string::npos);
  CHECK(msg.find(":3") != std::string::npos);

  msg = error_from("unknownkey.ini", "[clock]\ngama = 0.1\n");
  CHECK(msg.find("unknown key 'clock.gama'") != std::string::npos);

  msg = error_from("unknownsection.ini", "[clocks]\ngamma = 0.1\n");
  CHECK(msg.find("unknown key 'clocks.gamma'") != std::string::npos);

  msg = error_from("badnumber.ini", "[clock]\ngamma = fast\n");
  CHECK(msg.find("cannot parse 'fast'") != std::string::npos);

  msg = error_from("badbool.ini", "[run]\nstop_at_first_click = yes\n");
  CHECK(msg.find("expected 'true' or 'false'") != std::string::npos);

  msg = error_from("badchoice.ini", "[temporal]\npotential = box\n");
  CHECK(msg.find("harmonic|square_well|free_box") != std::string::npos);
}

TEST_CASE("range and structure violations are rejected") {
  std::string msg = error_from("gammahigh.ini", "[clock]\ngamma = 3.5\n");
  CHECK(msg.find("outside") != std::string::npos);

  msg = error_from("coarse.ini", "[temporal]\ngrid_points = 10\n");
  CHECK(msg.find("outside") != std::string::npos);

  msg = error_from("nothreads.ini", "[run]\nthreads = 0\n");
  CHECK(msg.find("outside") != std::string::npos);

  msg = error_from("unsorted.ini", "[clock]\nenergies = 1.0, 0.0\n");
  CHECK(msg.find("ascending") != std::string::npos);

  msg = error_from("emptycell.ini", "[clock]\nenergies = 0.0,,1.0\n");
  CHECK(msg.find("empty list element") != std::string::npos);

  msg = error_from("trailingcomma.ini", "[clock]\nenergies = 0.0,1.0,\n");
  CHECK(msg.find("empty list element") != std::string::npos);

  msg = error_from("negmean.ini", "[xi]\nmean = -0.5\n");
  CHECK(msg.find("outside") != std::string::npos);
}

TEST_CASE("snapshot serializes every setting") {
  const RunConfig cfg = default_run_config();
  const auto snap = cfg.snapshot();
  CHECK(snap.size() == 26);

  const auto value_of = [&](const std::string& key) -> std::string {
    for (const auto& [k, v] : snap) {
      if (k == key) return v;
    }
    FAIL("missing snapshot key " << key);
    return "";
  };
  CHECK(value_of("clock.energies") == "0,1");
  CHECK(value_of("temporal.potential") == "harmonic");
  CHECK(value_of("xi.kind") == "exponential");
  CHECK(value_of("run.law") == "first_click");
  CHECK(value_of("run.stop_at_first_click") == "true");
  CHECK(value_of("run.seed") == "1");
}

}  // namespace
}  // namespace pevclock
