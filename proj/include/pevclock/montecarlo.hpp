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

// Trajectory sampling for the clock. Two runners produce statistically
// identical click records for the two-level interface: a closed-form
// runner that draws clicks from the per-cycle probability directly, and a
// general runner that samples branches of the full engine recurrence.
//
// Determinism contract: trajectory i of a run seeded with s consumes only
// the stream splitmix64(state0 = s XOR i), regardless of thread count or
// scheduling. Merging per-trajectory results is integer arithmetic, so
// statistics are bit-identical across thread counts.

#ifndef PEVCLOCK_MONTECARLO_HPP_
#define PEVCLOCK_MONTECARLO_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "pevclock/pev_engine.hpp"
#include "pevclock/two_state_clock.hpp"

namespace pevclock {

// splitmix64: 64-bit state, one mixing round per draw. Chosen for its
// trivially documentable stream rule; statistical quality is ample for
// branch sampling.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 significant bits.
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

 private:
  std::uint64_t state_;
};

// The documented per-trajectory stream rule: scramble the base seed once
// through the generator's own mixer, then XOR in the trajectory index.
// Streams depend only on (seed, index), never on execution order.
// Without the premix, base seeds differing in a few low bits would
// produce the same set of streams in permuted order, and any
// order-insensitive statistic would coincide across distinct seeds.
inline SplitMix64 trajectory_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64(seed).next() ^ index);
}

enum class XiKind { kExponential, kHalfNormal, kDelta };

// Distribution of the tick length xi >= 0. `mean` is the distribution
// mean in every kind (the half-normal scale is mean * sqrt(pi/2)).
// Draw counts per sample are fixed per kind (delta 0, exponential 1,
// half-normal 2), so streams stay aligned across implementations.
struct XiDistribution {
  XiKind kind = XiKind::kExponential;
  double mean = 0.01;

  void validate() const;
};

double sample_xi(const XiDistribution& dist, SplitMix64& rng);

// Everything a runner needs. Exactly one of the two modes is active:
// engine_model == nullptr selects the closed-form two-level runner;
// otherwise the general engine runner samples branches of *engine_model.
struct SimulationConfig {
  TwoStateParams two_state;
  std::shared_ptr<const ClockModel> engine_model;
  // Ground envelope for OverlapMode::kExactGrid in the two-level runner.
  std::shared_ptr<const TemporalEigenpair> temporal_ground;
  XiDistribution xi;
  long n_trajectories = 10000;
  long max_steps = 100000;
  std::uint64_t rng_seed = 1;
  bool stop_at_first_click = true;
  int threads = 1;
  // Engine-mode preparation: product eigenstate (lambda0, nu0).
  int initial_lambda = 0;
  int initial_nu = 0;

  void validate() const;
};

struct TrajectoryStep {
  double xi = 0.0;
  double beta = 0.0;
  int sigma = 0;
  int u_label = -1;  // generator group (engine); -1 for the closed form
  bool clicked = false;
};

struct TrajectoryResult {
  std::optional<long> first_click_step;  // empty: no click within max_steps
  long n_steps = 0;
  long n_clicks = 0;
  double final_beta = 0.0;
  std::vector<TrajectoryStep> steps;  // filled only when recording
};

// First-click histogram plus counters; merged by plain integer addition.
struct ClickStatistics {
  std::map<long, long> histogram;  // ell -> count of first clicks at ell
  long n_trajectories = 0;
  long n_clicked = 0;
  long n_no_click = 0;

  void add(const TrajectoryResult& t);
  void merge(const ClickStatistics& other);

  double click_fraction() const;
  // Raw moment sum(ell^k * count) / n_clicked, k in 1..4.
  double moment(int k) const;
  double mean() const;
  double variance() const;  // unbiased
  double se_mean() const;
  // Length-weighted mean sum(ell^2 c) / sum(ell c).
  double weighted_mean() const;
};

ClickStatistics aggregate(const std::vector<TrajectoryResult>& trajectories);

// Single-trajectory runners. `record_steps` fills TrajectoryResult::steps.
// `cached_chi` optionally short-circuits the per-step envelope-overlap
// table when xi is deterministic.
TrajectoryResult run_two_state_trajectory(const SimulationConfig& config,
                                          SplitMix64& rng, bool record_steps);
TrajectoryResult run_engine_trajectory(const SimulationConfig& config,
                                       SplitMix64& rng, bool record_steps,
                                       const Eigen::MatrixXcd* cached_chi =
                                           nullptr);

struct SimulationOutput {
  ClickStatistics stats;
  std::vector<TrajectoryResult> trajectories;  // only when recording
};

// Runs all trajectories, split across config.threads workers. Results are
// independent of the split by the determinism contract above.
SimulationOutput run_simulation(const SimulationConfig& config,
                                bool record_trajectories = false);

}  // namespace pevclock

#endif  // PEVCLOCK_MONTECARLO_HPP_
