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

#include "pevclock/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pevclock {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

void XiDistribution::validate() const {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument("XiDistribution: mean must be finite and >= 0");
  }
}

double sample_xi(const XiDistribution& dist, SplitMix64& rng) {
  dist.validate();
  switch (dist.kind) {
    case XiKind::kDelta:
      return dist.mean;
    case XiKind::kExponential:
      // Inverse CDF; 1-u lies in (0, 1] so the log is finite.
      return -dist.mean * std::log(1.0 - rng.uniform01());
    case XiKind::kHalfNormal: {
      // |N(0, scale)| with scale chosen so the mean comes out right.
      const double scale = dist.mean * std::sqrt(1.57079632679489661923);
      const double u1 = 1.0 - rng.uniform01();  // (0, 1]
      const double u2 = rng.uniform01();
      const double z =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
      return scale * std::abs(z);
    }
  }
  throw InvalidArgument("sample_xi: unknown kind");
}

void SimulationConfig::validate() const {
  xi.validate();
  if (n_trajectories < 1) {
    throw InvalidArgument("SimulationConfig: need at least one trajectory");
  }
  if (max_steps < 1) {
    throw InvalidArgument("SimulationConfig: need at least one step");
  }
  if (threads < 1) {
    throw InvalidArgument("SimulationConfig: need at least one thread");
  }
  if (engine_model) {
    engine_model->validate();
    if (initial_lambda < 0 || initial_lambda >= engine_model->n_temporal() ||
        initial_nu < 0 || initial_nu >= engine_model->n_interface()) {
      throw InvalidArgument("SimulationConfig: initial state outside model");
    }
  } else {
    two_state.validate();
    if (two_state.overlap_mode == OverlapMode::kExactGrid &&
        !temporal_ground) {
      throw InvalidArgument(
          "SimulationConfig: exact-grid overlap needs a solved ground "
          "envelope");
    }
  }
}

void ClickStatistics::add(const TrajectoryResult& t) {
  ++n_trajectories;
  if (t.first_click_step.has_value()) {
    ++n_clicked;
    ++histogram[*t.first_click_step];
  } else {
    ++n_no_click;
  }
}

void ClickStatistics::merge(const ClickStatistics& other) {
  n_trajectories += other.n_trajectories;
  n_clicked += other.n_clicked;
  n_no_click += other.n_no_click;
  for (const auto& [ell, count] : other.histogram) {
    histogram[ell] += count;
  }
}

double ClickStatistics::click_fraction() const {
  if (n_trajectories == 0) {
    throw InsufficientData("ClickStatistics: no trajectories");
  }
  return double(n_clicked) / double(n_trajectories);
}

double ClickStatistics::moment(int k) const {
  if (n_clicked == 0) {
    throw InsufficientData("ClickStatistics: no clicks recorded");
  }
  double acc = 0.0;
  for (const auto& [ell, count] : histogram) {
    acc += std::pow(double(ell), k) * double(count);
  }
  return acc / double(n_clicked);
}

double ClickStatistics::mean() const { return moment(1); }

double ClickStatistics::variance() const {
  if (n_clicked < 2) {
    throw InsufficientData("ClickStatistics: variance needs two clicks");
  }
  const double m1 = moment(1);
  const double m2 = moment(2);
  return std::max(0.0, (m2 - m1 * m1) * double(n_clicked) /
                           double(n_clicked - 1));
}

double ClickStatistics::se_mean() const {
  return std::sqrt(variance() / double(n_clicked));
}

double ClickStatistics::weighted_mean() const {
  if (n_clicked == 0) {
    throw InsufficientData("ClickStatistics: no clicks recorded");
  }
  return moment(2) / moment(1);
}

ClickStatistics aggregate(const std::vector<TrajectoryResult>& trajectories) {
  ClickStatistics stats;
  for (const auto& t : trajectories) {
    stats.add(t);
  }
  return stats;
}

TrajectoryResult run_two_state_trajectory(const SimulationConfig& config,
                                          SplitMix64& rng,
                                          bool record_steps) {
  const TwoStateParams& params = config.two_state;
  const bool exact =
      params.overlap_mode == OverlapMode::kExactGrid;

  TrajectoryResult out;
  if (record_steps) {
    out.steps.reserve(std::size_t(std::min<long>(config.max_steps, 1024)));
  }
  int sigma = 0;
  double beta = 0.0;
  for (long step = 1; step <= config.max_steps; ++step) {
    const double xi = sample_xi(config.xi, rng);
    beta += xi;
    double overlap_sq = 1.0;
    if (exact) {
      const std::complex<double> ov =
          chi_overlap(config.temporal_ground->f, config.temporal_ground->f,
                      xi, params.temporal_inertia);
      overlap_sq = std::min(1.0, std::norm(ov));
    }
    const double p = click_probability(params, overlap_sq);
    const bool clicked = rng.uniform01() < p;
    if (clicked) {
      sigma ^= 1;
      ++out.n_clicks;
      if (!out.first_click_step.has_value()) {
        out.first_click_step = step;
      }
    }
    out.n_steps = step;
    out.final_beta = beta;
    if (record_steps) {
      out.steps.push_back(TrajectoryStep{xi, beta, sigma, -1, clicked});
    }
    if (clicked && config.stop_at_first_click) {
      break;
    }
  }
  return out;
}

TrajectoryResult run_engine_trajectory(const SimulationConfig& config,
                                       SplitMix64& rng, bool record_steps,
                                       const Eigen::MatrixXcd* cached_chi) {
  const ClockModel& model = *config.engine_model;
  GCoefficients g =
      initial_eigenstate(model, config.initial_lambda, config.initial_nu);

  TrajectoryResult out;
  if (record_steps) {
    out.steps.reserve(std::size_t(std::min<long>(config.max_steps, 1024)));
  }
  double beta = 0.0;
  for (long step = 1; step <= config.max_steps; ++step) {
    const double xi = sample_xi(config.xi, rng);
    beta += xi;

    Eigen::MatrixXcd local_chi;
    const Eigen::MatrixXcd* chi = cached_chi;
    if (chi == nullptr) {
      local_chi = chi_overlap_table(model, xi);
      chi = &local_chi;
    }

    // Branch choice: cumulative scan of the probabilities, renormalized
    // by their total (truncation leakage is excluded, not resampled).
    const BranchTable branches = enumerate_branches(model, g, xi, *chi);
    if (branches.total <= 1e-14) {
      throw ZeroBranch("run_engine_trajectory: all branches have zero weight");
    }
    const double r = rng.uniform01() * branches.total;
    double cum = 0.0;
    const BranchTable::Branch* picked = nullptr;
    for (const auto& branch : branches.branches) {
      cum += branch.probability;
      if (r < cum) {
        picked = &branch;
        break;
      }
    }
    if (picked == nullptr) {  // r landed on the rounding tail
      for (auto it = branches.branches.rbegin();
           it != branches.branches.rend(); ++it) {
        if (it->probability > 0.0) {
          picked = &*it;
          break;
        }
      }
    }

    const int prev_sigma = g.sigma;
    g = g_recurrence_step(model, g, picked->sigma, picked->u, xi, *chi);
    const bool clicked = g.sigma != prev_sigma;
    if (clicked) {
      ++out.n_clicks;
      if (!out.first_click_step.has_value()) {
        out.first_click_step = step;
      }
    }
    out.n_steps = step;
    out.final_beta = beta;
    if (record_steps) {
      out.steps.push_back(TrajectoryStep{xi, beta, g.sigma, g.u, clicked});
    }
    if (clicked && config.stop_at_first_click) {
      break;
    }
  }
  return out;
}

SimulationOutput run_simulation(const SimulationConfig& config,
                                bool record_trajectories) {
  config.validate();
  const long n = config.n_trajectories;
  const int threads =
      int(std::min<long>(std::max(config.threads, 1), std::max<long>(n, 1)));

  // Deterministic xi means a constant overlap table; build it once.
  Eigen::MatrixXcd shared_chi;
  const Eigen::MatrixXcd* cached_chi = nullptr;
  if (config.engine_model && config.xi.kind == XiKind::kDelta) {
    shared_chi = chi_overlap_table(*config.engine_model, config.xi.mean);
    cached_chi = &shared_chi;
  }

  SimulationOutput out;
  if (record_trajectories) {
    out.trajectories.resize(std::size_t(n));
  }

  std::vector<ClickStatistics> partial(static_cast<std::size_t>(threads));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));

  const auto worker = [&](int tid, long begin, long end) {
    try {
      ClickStatistics local;
      for (long i = begin; i < end; ++i) {
        SplitMix64 rng =
            trajectory_stream(config.rng_seed, std::uint64_t(i));
        TrajectoryResult t =
            config.engine_model
                ? run_engine_trajectory(config, rng, record_trajectories,
                                        cached_chi)
                : run_two_state_trajectory(config, rng, record_trajectories);
        local.add(t);
        if (record_trajectories) {
          out.trajectories[std::size_t(i)] = std::move(t);
        }
      }
      partial[std::size_t(tid)] = std::move(local);
    } catch (...) {
      failures[std::size_t(tid)] = std::current_exception();
    }
  };

  if (threads == 1) {
    worker(0, 0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int tid = 0; tid < threads; ++tid) {
      const long begin = n * tid / threads;
      const long end = n * (tid + 1) / threads;
      pool.emplace_back(worker, tid, begin, end);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  for (const auto& local : partial) {
    out.stats.merge(local);
  }
  return out;
}

}  // namespace pevclock
