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

#include <CLI11.hpp>

#include "pevclock/cli.hpp"
#include "pevclock/version.hpp"

namespace {

void add_common_options(CLI::App* sub, pevclock::CliOptions* options) {
  sub->add_option("--config", options->config_path,
                  "Configuration file (INI-style); defaults used if absent")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", options->seed, "Override run.seed");
  sub->add_option("--trajectories", options->trajectories,
                  "Override run.trajectories");
  sub->add_option("--threads", options->threads, "Override run.threads");
  sub->add_option("--out", options->out_dir,
                  "Output directory (created if missing)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pevclock: discrete-step quantum clock simulator and validator"};
  app.set_version_flag("--version", pevclock::kVersion);
  app.require_subcommand(1);

  pevclock::CliOptions solve_options;
  pevclock::CliOptions simulate_options;
  pevclock::CliOptions figures_options;
  pevclock::FiguresOptions figures;

  CLI::App* solve = app.add_subcommand(
      "solve-temporal",
      "Solve the temporal eigenproblem and export the envelopes");
  add_common_options(solve, &solve_options);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Sample click trajectories and compare with closed forms");
  add_common_options(simulate, &simulate_options);
  simulate->add_flag("--engine", simulate_options.engine,
                     "Use the general branch-sampling engine (plus an "
                     "equivalence check against the closed-form runner)");

  CLI::App* figs =
      app.add_subcommand("figures", "Export closed-form figure tables");
  add_common_options(figs, &figures_options);
  figs->add_option("--which", figures.which, "fig1, fig2 or all")
      ->check(CLI::IsMember({"fig1", "fig2", "all"}));
  figs->add_option("--p-list", figures.p_list,
                   "Click probabilities for fig1 columns")
      ->delimiter(',');
  figs->add_option("--ell-max", figures.ell_hi, "Largest ell in fig1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pevclock::kExitConfigError;
  }

  if (solve->parsed()) {
    return pevclock::run_solve_temporal(solve_options);
  }
  if (simulate->parsed()) {
    return pevclock::run_simulate(simulate_options);
  }
  return pevclock::run_figures(figures_options, figures);
}
