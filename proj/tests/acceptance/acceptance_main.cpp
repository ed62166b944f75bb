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

// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the exit status is the number of failed criteria. The first
// argument is the path to the pevclock CLI binary, used for the
// reproducibility round-trip.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "pevclock/analytics.hpp"
#include "pevclock/montecarlo.hpp"
#include "pevclock/pev_engine.hpp"
#include "pevclock/state_algebra.hpp"
#include "pevclock/temporal_sector.hpp"
#include "pevclock/two_state_clock.hpp"

namespace pevclock {
namespace {

namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;

struct Gate {
  int failures = 0;

  void report(bool ok, const std::string& name, const std::string& detail) {
    std::printf("%s: %s (%s)\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------
// 1. The continuous maximizer of the length-weighted law at the three
//    reference click probabilities.
void check_optimal_length(Gate& gate) {
  const double v1 = ell_max(0.1);
  const double v2 = ell_max(0.25);
  const double v3 = ell_max(0.5);
  const bool ok = std::abs(v1 - 9.49) <= 0.01 && std::abs(v2 - 3.48) <= 0.01 &&
                  std::abs(v3 - 1.44) <= 0.01;
  gate.report(ok, "optimal readout length at p = 0.1, 0.25, 0.5",
              fmt("%.4f, %.4f, %.4f", v1, v2, v3));
}

// ---------------------------------------------------------------------
// 2. Balanced clock: closed-form moments against the direct series.
void check_balanced_moments(Gate& gate) {
  const double mean = mean_ell(0.5);
  const double var = var_ell(0.5);
  const double series_mean = series_moment_weighted(0.5, 1);
  const double series_m2 = series_moment_weighted(0.5, 2);
  const double series_var = series_m2 - series_mean * series_mean;
  const bool ok = std::abs(mean - 3.0) <= 1e-12 &&
                  std::abs(var - 4.0) <= 1e-12 &&
                  std::abs(series_mean - mean) <= 1e-9 &&
                  std::abs(series_m2 - second_moment_ell(0.5)) <= 1e-9 &&
                  std::abs(series_var - var) <= 1e-9;
  gate.report(ok, "balanced-clock length moments vs direct series",
              fmt("mean %.12f, var %.12f, series gap %.2e", mean, var,
                  std::abs(series_var - var)));
}

// ---------------------------------------------------------------------
// 3. One million sampled trajectories of the balanced clock against the
//    geometric first-click law, within the wall-clock budget.
void check_balanced_sampling(Gate& gate) {
  SimulationConfig sim;
  sim.two_state.gamma = kPi / 4.0;
  sim.two_state.xi_mean = 0.01;
  sim.xi.kind = XiKind::kDelta;
  sim.xi.mean = 0.01;
  sim.n_trajectories = 1000000;
  sim.max_steps = 10000;
  sim.rng_seed = 271828;
  sim.threads = 1;  // the wall-clock budget is a single-thread budget

  const auto start = std::chrono::steady_clock::now();
  const SimulationOutput output = run_simulation(sim);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const ComparisonReport report =
      compare(output.stats, ClickLaw{0.5}, ComparisonLaw::kFirstClickGeometric);
  const double mean_gap = std::abs(output.stats.mean() - 2.0);
  const double se = output.stats.se_mean();
  const bool ok = report.tv_distance < 0.01 && mean_gap <= 3.0 * se &&
                  seconds < 60.0;
  gate.report(ok, "1e6 balanced-clock samples match the geometric law",
              fmt("tv %.2e, mean gap %.2e (3se %.2e), %.1fs",
                  report.tv_distance, mean_gap, 3.0 * se, seconds));
}

// ---------------------------------------------------------------------
// 4. All eight cycle amplitudes against a matrix-exponential oracle.
void check_amplitudes(Gate& gate) {
  const double gammas[] = {0.1, 0.3, kPi / 4.0, 1.0};
  double worst = 0.0;
  double worst_total = 0.0;
  for (double g : gammas) {
    Eigen::Matrix2cd x;
    x << 0.0, 1.0, 1.0, 0.0;
    const Eigen::Matrix2cd u = (std::complex<double>(0.0, -g) * x).exp();
    for (int from = 0; from < 2; ++from) {
      double total = 0.0;
      for (int nu = 0; nu < 2; ++nu) {
        for (int to = 0; to < 2; ++to) {
          const std::complex<double> oracle = u(to, nu) * std::conj(u(from, nu));
          const std::complex<double> amp = transition_amplitude(from, nu, to, g);
          worst = std::max(worst, std::abs(amp - oracle));
          total += std::norm(amp);
        }
      }
      worst_total = std::max(worst_total, std::abs(total - 1.0));
    }
  }
  const bool ok = worst <= 1e-12 && worst_total <= 1e-12;
  gate.report(ok, "cycle amplitudes match the matrix-exponential oracle",
              fmt("max amp gap %.2e, max completeness gap %.2e", worst,
                  worst_total));
}

ClockModel single_envelope_model(double gamma) {
  ClockModel model;
  model.temporal_inertia = 1.0;
  TemporalModel tm;
  tm.potential = TemporalPotential::harmonic(1.0);
  tm.temporal_inertia = 1.0;
  tm.grid = default_grid(1.0, 1.0);
  model.temporal_levels = solve_temporal_eigenproblem(tm, 1);
  model.interface_energies = {0.0, 1.0};
  model.reconfigurer = Eigen::MatrixXcd::Zero(2, 2);
  model.reconfigurer(0, 1) = 1.0;
  model.reconfigurer(1, 0) = 1.0;
  model.gamma = gamma;
  model.validate();
  return model;
}

// ---------------------------------------------------------------------
// 5. The general engine against the two-level closed form: branch
//    probabilities per step, then whole-run statistics on fresh samples.
void check_engine_equivalence(Gate& gate) {
  const double gamma = 0.3;
  const double xi = 0.02;
  auto model = std::make_shared<ClockModel>(single_envelope_model(gamma));
  const EigenvalueTable table = build_eigenvalue_table(*model);
  const double chi_sq =
      std::norm(chi_overlap(model->temporal_levels[0].f,
                            model->temporal_levels[0].f, xi, 1.0));

  double worst = 0.0;
  GCoefficients g = initial_eigenstate(*model, 0, 0);
  for (int step = 0; step < 50; ++step) {
    const BranchTable branches = enumerate_branches(*model, g, xi);
    for (const auto& b : branches.branches) {
      // Group u holds exactly one (lambda, nu) pair here; recover nu.
      const int nu = table.groups[b.u].members.front().second;
      const double expected =
          chi_sq * std::norm(transition_amplitude(g.sigma, nu, b.sigma, gamma));
      worst = std::max(worst, std::abs(b.probability - expected));
    }
    const int sigma_next = (step % 3 == 0) ? g.sigma : 1 - g.sigma;
    const int u_next = table.group_of(0, step % 2);
    g = g_recurrence_step(*model, g, sigma_next, u_next, xi);
  }

  // Sampled statistics: engine stream vs an independent closed-form stream.
  SimulationConfig engine_sim;
  engine_sim.engine_model = model;
  engine_sim.two_state.gamma = gamma;
  engine_sim.xi.kind = XiKind::kDelta;
  engine_sim.xi.mean = xi;
  engine_sim.n_trajectories = 10000;
  engine_sim.max_steps = 5000;
  engine_sim.rng_seed = 90210;
  engine_sim.threads = 4;

  SimulationConfig closed_sim = engine_sim;
  closed_sim.engine_model.reset();
  closed_sim.two_state.xi_mean = xi;
  closed_sim.rng_seed = 1090210;

  const SimulationOutput engine_run = run_simulation(engine_sim);
  const SimulationOutput closed_run = run_simulation(closed_sim);
  const double z = two_sample_mean_z(engine_run.stats, closed_run.stats);

  const bool ok = worst <= 1e-9 && std::abs(z) <= 4.0;
  gate.report(ok, "engine branch probabilities match the closed form",
              fmt("max per-step gap %.2e over 50 steps, two-sample z %.2f",
                  worst, z));
}

// ---------------------------------------------------------------------
// 6. Projector-set invariants on random Hermitian spectra, and exhaustive
//    branch completeness of a 4x4 product configuration at every step.
void check_projectors_and_completeness(Gate& gate) {
  std::mt19937_64 rng(20260819);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst_defect = 0.0;
  bool sets_ok = true;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index dim = 2 + (k % 5);
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        m(i, j) = Complex(uni(rng), uni(rng));
      }
    }
    const HermitianOperator op{0.5 * (m + m.adjoint()), "acceptance"};
    const SpectralDecomposition dec = spectral_projectors(op, 1e-9);
    try {
      validate_projector_set(dec.set);
    } catch (const std::exception&) {
      sets_ok = false;
      break;
    }
    // Track the completeness defect directly as well.
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& proj : dec.set.projectors) {
      sum += proj.matrix;
    }
    worst_defect = std::max(
        worst_defect,
        (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff());
  }

  // 4 envelopes x 4 interface levels, zero tick length: the enumerated
  // branch probabilities must resolve unity at every step.
  ClockModel model;
  TemporalModel tm;
  tm.potential = TemporalPotential::harmonic(1.0);
  tm.temporal_inertia = 1.0;
  tm.grid = default_grid(1.0, 1.0);
  model.temporal_levels = solve_temporal_eigenproblem(tm, 4);
  model.interface_energies = {0.0, 0.7, 1.9, 3.1};
  model.reconfigurer = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) model.reconfigurer(i, j) = Complex(0.25, 0.1 * (i - j));
    }
  }
  model.gamma = 0.35;
  model.validate();

  double worst_total = 0.0;
  GCoefficients g = initial_eigenstate(model, 0, 0);
  for (int step = 0; step < 25; ++step) {
    const BranchTable branches = enumerate_branches(model, g, 0.0);
    worst_total = std::max(worst_total, std::abs(branches.total - 1.0));
    // Descend into a positive branch, rotating the choice across steps.
    std::vector<int> alive;
    for (int i = 0; i < int(branches.branches.size()); ++i) {
      if (branches.branches[i].probability > 1e-6) alive.push_back(i);
    }
    const auto& next = branches.branches[alive[(step * 7 + 3) % alive.size()]];
    g = g_recurrence_step(model, g, next.sigma, next.u, 0.0);
  }

  const bool ok = sets_ok && worst_defect <= 1e-9 && worst_total <= 1e-9;
  gate.report(ok,
              "projector invariants (1000 random sets) and branch completeness",
              fmt("max completeness defect %.2e, max |1-sum| %.2e over 25 "
                  "steps",
                  worst_defect, worst_total));
}

// ---------------------------------------------------------------------
// 7. Harmonic temporal sector: spectrum, localization, momentum carrier
//    and the Gaussian overlap closed form.
void check_harmonic_sector(Gate& gate) {
  TemporalModel tm;
  tm.potential = TemporalPotential::harmonic(1.0);
  tm.temporal_inertia = 1.0;
  tm.grid = default_grid(1.0, 1.0);
  const auto pairs = solve_temporal_eigenproblem(tm, 10);

  double worst_level = 0.0;
  double worst_mean = 0.0;
  double worst_momentum = 0.0;
  for (const auto& pair : pairs) {
    const double e = 0.5 * tm.temporal_inertia - pair.epsilon_t;
    worst_level = std::max(
        worst_level, std::abs(e - (pair.lambda_index + 0.5)));
    worst_mean = std::max(worst_mean, std::abs(time_expectation(pair.f)));
    worst_momentum = std::max(
        worst_momentum,
        std::abs(temporal_momentum_expectation(pair.f, 1.0) - 1.0));
  }

  double worst_overlap = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double xi = 0.05 * i;
    const double got = std::abs(chi_overlap(pairs[0].f, pairs[0].f, xi, 1.0));
    const double want = std::exp(-xi * xi / 4.0);
    worst_overlap = std::max(worst_overlap, std::abs(got - want));
  }

  const bool ok = worst_level <= 1e-3 && worst_mean <= 1e-8 &&
                  worst_momentum <= 1e-8 && worst_overlap <= 1e-4;
  gate.report(ok, "harmonic temporal sector matches its closed forms",
              fmt("level gap %.2e, <t> %.2e, momentum gap %.2e, overlap gap "
                  "%.2e",
                  worst_level, worst_mean, worst_momentum, worst_overlap));
}

// ---------------------------------------------------------------------
// 8. A single parity-even envelope: the clock reading is the accumulated
//    translation, step after step.
void check_clock_reading(Gate& gate) {
  const ClockModel model = single_envelope_model(0.3);
  const EigenvalueTable table = build_eigenvalue_table(model);
  GCoefficients g = initial_eigenstate(model, 0, 0);
  double beta = 0.0;
  double worst = 0.0;
  for (int step = 0; step < 100; ++step) {
    const double xi = 0.01 * (1 + step % 5);
    const int sigma_next = (step % 2 == 0) ? 1 - g.sigma : g.sigma;
    const int u_next = table.group_of(0, (step / 2) % 2);
    g = g_recurrence_step(model, g, sigma_next, u_next, xi);
    beta += xi;
    worst = std::max(
        worst, std::abs(clock_reading_expectation(model, g, beta) - beta));
  }
  const bool ok = worst <= 1e-8;
  gate.report(ok, "single-envelope clock reading tracks accumulated ticks",
              fmt("max |reading - beta| %.2e over 100 steps", worst));
}

// ---------------------------------------------------------------------
// 9. CLI reproducibility: identical configuration and seed give
//    byte-identical statistics files, across runs and thread counts.
std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& binary, const std::string& args) {
  const std::string cmd = binary + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void check_cli_reproducibility(Gate& gate, const std::string& binary) {
  const fs::path root = fs::temp_directory_path() / "pevclock_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string a = (root / "a").string();
  const std::string b = (root / "b").string();
  const std::string c = (root / "c").string();
  const std::string d = (root / "d").string();

  const int ra = run_cli(binary, "simulate --seed 424242 --out " + a);
  const int rb = run_cli(binary, "simulate --seed 424242 --out " + b);
  const int rc = run_cli(binary, "simulate --seed 424243 --out " + c);
  const int rd =
      run_cli(binary, "simulate --seed 424242 --threads 4 --out " + d);

  const std::string stats_a = slurp(fs::path(a) / "statistics.csv");
  const std::string stats_b = slurp(fs::path(b) / "statistics.csv");
  const std::string stats_c = slurp(fs::path(c) / "statistics.csv");
  const std::string stats_d = slurp(fs::path(d) / "statistics.csv");

  const bool ok = ra == 0 && rb == 0 && rc == 0 && rd == 0 &&
                  !stats_a.empty() && stats_a == stats_b && stats_a == stats_d &&
                  stats_a != stats_c;
  gate.report(ok, "identical seeds reproduce identical statistics files",
              fmt("exits %d/%d/%d/%d, same-seed equal %d, threads equal %d, "
                  "reseeded differs %d",
                  ra, rb, rc, rd, int(stats_a == stats_b),
                  int(stats_a == stats_d), int(stats_a != stats_c)));
}

}  // namespace
}  // namespace pevclock

int main(int argc, char** argv) {
  using namespace pevclock;
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_tests <path-to-pevclock-binary>\n");
    return 64;
  }
  Gate gate;
  try {
    check_optimal_length(gate);
    check_balanced_moments(gate);
    check_balanced_sampling(gate);
    check_amplitudes(gate);
    check_engine_equivalence(gate);
    check_projectors_and_completeness(gate);
    check_harmonic_sector(gate);
    check_clock_reading(gate);
    check_cli_reproducibility(gate, argv[1]);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected exception: %s\n", e.what());
    return 99;
  }
  std::printf("acceptance: %d/9 criteria passed\n", 9 - gate.failures);
  return gate.failures;
}
