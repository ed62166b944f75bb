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

#include "pevclock/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>

#include "pevclock/csv.hpp"
#include "pevclock/version.hpp"

namespace pevclock {

namespace {

namespace fs = std::filesystem;

std::string now_iso8601_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm g{};
  gmtime_r(&t, &g);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &g);
  return buf;
}

// Run manifest: key = value lines, written even when the run fails so the
// output directory always explains itself.
class Manifest {
 public:
  Manifest(const std::string& out_dir, const std::string& subcommand)
      : path_((fs::path(out_dir) / "run_manifest.txt").string()),
        start_(std::chrono::steady_clock::now()) {
    add("tool", "pevclock");
    add("version", kVersion);
    add("subcommand", subcommand);
    add("started_at", now_iso8601_utc());
  }

  void add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
  }
  void add_config(const RunConfig& cfg) {
    for (const auto& [k, v] : cfg.snapshot()) {
      add("config." + k, v);
    }
  }
  void add_output(const std::string& path, long rows) {
    add("output", path + " (" + std::to_string(rows) + " rows)");
  }

  void finish(const std::string& status) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
    add("duration_ms", std::to_string(elapsed.count()));
    add("status", status);
    std::ofstream out(path_);
    for (const auto& [k, v] : entries_) {
      out << k << " = " << v << "\n";
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string path_;
  std::chrono::steady_clock::time_point start_;
};

RunConfig resolve_config(const CliOptions& options) {
  RunConfig cfg = options.config_path.empty()
                      ? default_run_config()
                      : load_run_config(options.config_path);
  if (options.seed) cfg.run.seed = *options.seed;
  if (options.trajectories) cfg.run.trajectories = *options.trajectories;
  if (options.threads) cfg.run.threads = *options.threads;
  return cfg;
}

TemporalModel make_temporal_model(const TemporalConfig& tc) {
  TemporalModel model;
  model.temporal_inertia = tc.inertia;
  switch (tc.potential) {
    case PotentialKind::kHarmonic:
      model.potential = TemporalPotential::harmonic(tc.omega);
      break;
    case PotentialKind::kSquareWell:
      model.potential =
          TemporalPotential::square_well(tc.well_half_width, tc.well_height);
      break;
    case PotentialKind::kFreeBox:
      model.potential = TemporalPotential::free_box();
      break;
  }
  double half = tc.grid_half_width;
  if (half <= 0.0) {  // auto-size per potential
    switch (tc.potential) {
      case PotentialKind::kHarmonic:
        half = 12.0 / std::sqrt(tc.inertia * tc.omega);
        break;
      case PotentialKind::kSquareWell:
        half = 4.0 * tc.well_half_width;
        break;
      case PotentialKind::kFreeBox:
        half = 1.0;
        break;
    }
  }
  model.grid = TemporalGrid{-half, half, tc.grid_points};
  return model;
}

// Discrete residual ||H f - e f|| in the grid norm, against the same
// finite-difference operator the solver assembled.
double residual_norm(const TemporalModel& model,
                     const TemporalEigenpair& pair) {
  const auto& f = pair.f.values;
  const Eigen::Index n = f.size();
  const double h = model.grid.spacing();
  const double inv = 1.0 / (2.0 * model.temporal_inertia * h * h);
  const double e = 0.5 * model.temporal_inertia - pair.epsilon_t;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> right = i + 1 < n ? f(i + 1) : 0.0;
    const std::complex<double> left = i > 0 ? f(i - 1) : 0.0;
    const std::complex<double> hf =
        -inv * (right - 2.0 * f(i) + left) +
        model.potential.value(model.grid.point(i), model.temporal_inertia) *
            f(i);
    acc += std::norm(hf - e * f(i));
  }
  return std::sqrt(h * acc);
}

std::string join(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

// Builds the engine model for --engine runs: configured temporal
// truncation over the two-level interface with the exchange reconfigurer.
std::shared_ptr<const ClockModel> build_engine_model(const RunConfig& cfg) {
  if (cfg.clock.energies.size() != 2) {
    throw ConfigError(
        "engine mode drives the two-level interface; 'clock.energies' must "
        "list exactly 2 values");
  }
  const TemporalModel tmodel = make_temporal_model(cfg.temporal);
  auto model = std::make_shared<ClockModel>();
  model->temporal_inertia = cfg.temporal.inertia;
  model->temporal_levels =
      solve_temporal_eigenproblem(tmodel, cfg.clock.temporal_levels);
  model->interface_energies = cfg.clock.energies;
  model->reconfigurer = Eigen::MatrixXcd::Zero(2, 2);
  model->reconfigurer(0, 1) = 1.0;
  model->reconfigurer(1, 0) = 1.0;
  model->gamma = cfg.clock.gamma;
  model->group_tol = cfg.clock.group_tol;
  model->validate();
  return model;
}

void write_statistics_csv(CsvWriter& csv, const ComparisonReport& report) {
  csv.write_header(
      {"ell", "count", "empirical_prob", "analytic_prob", "abs_error"});
  for (const auto& row : report.rows) {
    csv.write_row({format_long(row.ell), format_long(row.count),
                   format_double(row.empirical_prob),
                   format_double(row.analytic_prob),
                   format_double(row.abs_error)});
  }
}

void write_trajectories_csv(CsvWriter& csv,
                            const std::vector<TrajectoryResult>& trajectories) {
  csv.write_header(
      {"trajectory_id", "step", "xi", "beta", "sigma", "u_label", "clicked"});
  for (std::size_t id = 0; id < trajectories.size(); ++id) {
    long step = 1;
    for (const auto& s : trajectories[id].steps) {
      csv.write_row({format_long(long(id)), format_long(step),
                     format_double(s.xi), format_double(s.beta),
                     format_long(s.sigma), format_long(s.u_label),
                     s.clicked ? "1" : "0"});
      ++step;
    }
  }
}

}  // namespace

int run_solve_temporal(const CliOptions& options) {
  fs::create_directories(options.out_dir);
  Manifest manifest(options.out_dir, "solve-temporal");
  RunConfig cfg;
  try {
    cfg = resolve_config(options);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("config_error");
    return kExitConfigError;
  }
  manifest.add_config(cfg);

  try {
    const TemporalModel model = make_temporal_model(cfg.temporal);
    const auto pairs =
        solve_temporal_eigenproblem(model, cfg.temporal.n_states);

    // Self-checks: pairwise grid orthonormality and operator residuals.
    bool checks_ok = true;
    const double h = model.grid.spacing();
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = a; b < pairs.size(); ++b) {
        const double gram =
            (h * (pairs[a].f.values.adjoint() * pairs[b].f.values)(0)).real();
        const double target = a == b ? 1.0 : 0.0;
        if (std::abs(gram - target) > 1e-8) {
          std::fprintf(stderr,
                       "self-check failed: <f_%zu|f_%zu> = %.3e off by more "
                       "than 1e-8\n",
                       a, b, gram);
          checks_ok = false;
        }
      }
      const double res = residual_norm(model, pairs[a]);
      if (res > 1e-6) {
        std::fprintf(stderr,
                     "self-check failed: residual of state %zu is %.3e\n", a,
                     res);
        checks_ok = false;
      }
    }

    std::printf("# lambda  epsilon_T      e            <t>          std(t)\n");
    int wide_states = 0;
    for (const auto& pair : pairs) {
      const double e = 0.5 * cfg.temporal.inertia - pair.epsilon_t;
      const double mean_t = time_expectation(pair.f);
      const double std_t = std::sqrt(time_variance(pair.f));
      const bool wide = std_t > cfg.temporal.clock_resolution;
      if (wide) ++wide_states;
      std::printf("%8d  %12.9f  %12.9f  %12.4e  %12.6f%s\n",
                  pair.lambda_index, pair.epsilon_t, e, mean_t, std_t,
                  wide ? "  [wider than clock resolution]" : "");
    }
    if (wide_states > 0) {
      std::fprintf(stderr,
                   "warning: %d state(s) wider than clock_resolution %.6g\n",
                   wide_states, cfg.temporal.clock_resolution);
      manifest.add("warning_wide_states", std::to_string(wide_states));
    }

    CsvWriter csv(join(options.out_dir, "eigenpairs.csv"));
    std::vector<std::string> header = {"lambda_index", "epsilon_T"};
    for (Eigen::Index i = 0; i < model.grid.n_points; ++i) {
      header.push_back("f_" + std::to_string(i));
    }
    csv.write_header(header);
    for (const auto& pair : pairs) {
      std::vector<std::string> row = {format_long(pair.lambda_index),
                                      format_double(pair.epsilon_t)};
      for (Eigen::Index i = 0; i < pair.f.values.size(); ++i) {
        row.push_back(format_double(pair.f.values(i).real()));
      }
      csv.write_row(row);
    }
    manifest.add_output(csv.path(), csv.rows_written());
    manifest.finish(checks_ok ? "ok" : "check_failed");
    return checks_ok ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("config_error");
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("error");
    return kExitRuntimeError;
  }
}

int run_simulate(const CliOptions& options) {
  fs::create_directories(options.out_dir);
  Manifest manifest(options.out_dir, "simulate");
  RunConfig cfg;
  try {
    cfg = resolve_config(options);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("config_error");
    return kExitConfigError;
  }
  manifest.add_config(cfg);
  manifest.add("engine", options.engine ? "true" : "false");

  try {
    SimulationConfig sim;
    sim.two_state.gamma = cfg.clock.gamma;
    sim.two_state.temporal_inertia = cfg.temporal.inertia;
    sim.two_state.xi_mean = cfg.xi.mean;
    sim.two_state.overlap_mode = cfg.clock.overlap;
    sim.xi = cfg.xi;
    sim.n_trajectories = cfg.run.trajectories;
    sim.max_steps = cfg.run.max_steps;
    sim.rng_seed = cfg.run.seed;
    sim.stop_at_first_click = cfg.run.stop_at_first_click;
    sim.threads = cfg.run.threads;

    std::shared_ptr<const TemporalEigenpair> ground;
    if (options.engine) {
      sim.engine_model = build_engine_model(cfg);
      ground = std::shared_ptr<const TemporalEigenpair>(
          sim.engine_model, &sim.engine_model->temporal_levels.front());
    } else if (cfg.clock.overlap == OverlapMode::kExactGrid) {
      const TemporalModel tmodel = make_temporal_model(cfg.temporal);
      auto solved = solve_temporal_eigenproblem(tmodel, 1);
      ground =
          std::make_shared<const TemporalEigenpair>(std::move(solved.front()));
      sim.temporal_ground = ground;
    }

    // The analytic law's overlap factor: exact only when xi is
    // deterministic and a solved envelope is in hand; otherwise the
    // narrow-envelope value 1.
    double overlap_sq = 1.0;
    if (cfg.xi.kind == XiKind::kDelta && ground &&
        (options.engine || cfg.clock.overlap == OverlapMode::kExactGrid)) {
      overlap_sq = std::min(
          1.0, std::norm(chi_overlap(ground->f, ground->f, cfg.xi.mean,
                                     cfg.temporal.inertia)));
    }
    const double p = click_probability(sim.two_state, overlap_sq);
    manifest.add("click_probability", format_double(p));

    const SimulationOutput output =
        run_simulation(sim, cfg.run.dump_trajectories);
    manifest.add("n_trajectories", format_long(output.stats.n_trajectories));
    manifest.add("n_clicked", format_long(output.stats.n_clicked));
    manifest.add("n_no_click", format_long(output.stats.n_no_click));

    bool passed = true;
    std::string report_text;
    ComparisonReport report;
    bool have_report = false;
    if (p <= 0.0) {
      report_text = "comparison: skipped (click probability is 0)\n";
      passed = output.stats.n_clicked == 0;
    } else if (output.stats.n_clicked == 0) {
      report_text = "comparison: failed (no clicks recorded at p > 0)\n";
      passed = false;
    } else {
      report = compare(output.stats, ClickLaw{p}, cfg.run.law,
                       cfg.run.thresholds);
      have_report = true;
      report_text = report.to_text();
      passed = report.passed;
    }

    // Engine runs double as an oracle check: the closed-form runner on an
    // independent stream must agree in distribution.
    if (options.engine && output.stats.n_clicked > 1) {
      SimulationConfig twin = sim;
      twin.engine_model.reset();
      twin.temporal_ground = ground;
      twin.two_state.overlap_mode = OverlapMode::kExactGrid;
      twin.rng_seed = SplitMix64(sim.rng_seed).next();
      const SimulationOutput reference = run_simulation(twin, false);
      const double z = two_sample_mean_z(output.stats, reference.stats);
      char buf[80];
      std::snprintf(buf, sizeof(buf), "engine_equivalence_z: %.6g\n", z);
      report_text += buf;
      manifest.add("engine_equivalence_z", format_double(z));
      if (std::abs(z) > cfg.run.thresholds.z_max) {
        passed = false;
      }
    }

    std::fputs(report_text.c_str(), stdout);

    {
      std::ofstream report_file(join(options.out_dir, "report.txt"));
      report_file << report_text;
      manifest.add("output", join(options.out_dir, "report.txt"));
    }
    if (have_report) {
      CsvWriter csv(join(options.out_dir, "statistics.csv"));
      write_statistics_csv(csv, report);
      manifest.add_output(csv.path(), csv.rows_written());
    }
    if (cfg.run.dump_trajectories) {
      CsvWriter csv(join(options.out_dir, "trajectories.csv"));
      write_trajectories_csv(csv, output.trajectories);
      manifest.add_output(csv.path(), csv.rows_written());
    }

    manifest.finish(passed ? "ok" : "check_failed");
    return passed ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("config_error");
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("error");
    return kExitRuntimeError;
  }
}

int run_figures(const CliOptions& options, const FiguresOptions& figures) {
  fs::create_directories(options.out_dir);
  Manifest manifest(options.out_dir, "figures");
  try {
    if (figures.which != "fig1" && figures.which != "fig2" &&
        figures.which != "all") {
      throw ConfigError("figures: --which must be fig1, fig2 or all");
    }
    const auto write_table = [&](const FigureTable& table, const char* name) {
      CsvWriter csv(join(options.out_dir, name));
      csv.write_header(table.columns);
      for (const auto& row : table.rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (double v : row) {
          cells.push_back(format_double(v));
        }
        csv.write_row(cells);
      }
      manifest.add_output(csv.path(), csv.rows_written());
    };

    if (figures.which != "fig2") {
      write_table(figure1_data(figures.p_list, figures.ell_hi), "fig1.csv");
    }
    if (figures.which != "fig1") {
      write_table(figure2_data(), "fig2.csv");
    }
    manifest.finish("ok");
    return kExitOk;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("config_error");
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    manifest.add("error", e.what());
    manifest.finish("error");
    return kExitRuntimeError;
  }
}

}  // namespace pevclock
