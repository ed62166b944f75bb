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

// Closed-form click statistics and estimator/analytic comparisons.
//
// Two laws describe the cycle index ell of a click when each cycle clicks
// independently with probability p:
//
//   * first-click law:      p (1-p)^(ell-1)        (plain geometric);
//   * length-weighted law:  ell p^2 (1-p)^(ell-1)  (a click observed in a
//     window singles out longer waits proportionally to ell).
//
// The weighted law has mean (2-p)/p, second moment (p^2-6p+6)/p^2,
// variance (2-2p)/p^2, and a continuous mode at ell = -1/ln(1-p). The
// series_* functions compute the same quantities by direct summation and
// exist as independent cross-checks of the closed forms.

#ifndef PEVCLOCK_ANALYTICS_HPP_
#define PEVCLOCK_ANALYTICS_HPP_

#include <string>
#include <vector>

#include "pevclock/montecarlo.hpp"

namespace pevclock {

// Per-cycle click probability in (0, 1].
struct ClickLaw {
  double p = 0.5;

  void validate() const;
  static ClickLaw from_gamma(double gamma, double chi_overlap_sq = 1.0);
};

// Length-weighted law ell p^2 (1-p)^(ell-1) at ell >= 1.
double prob_click_at(double p, long ell);
// First-click law p (1-p)^(ell-1) at ell >= 1.
double first_click_prob_at(double p, long ell);

double mean_ell(double p);           // (2-p)/p
double second_moment_ell(double p);  // (p^2-6p+6)/p^2
double var_ell(double p);            // (2-2p)/p^2
// Continuous maximizer of the weighted law, -1/ln(1-p); p in (0,1) open.
double ell_max(double p);

// Direct summation of sum(ell^k * law(ell)) with a rigorous geometric
// tail bound below 1e-13. k = 0 gives the normalization.
double series_moment_weighted(double p, int k);
double series_moment_first_click(double p, int k);

enum class ComparisonLaw { kFirstClickGeometric, kLengthWeighted };

struct ComparisonThresholds {
  double tv_max = 0.01;
  double z_max = 4.0;
  long min_clicks = 100;
};

struct ComparisonRow {
  long ell = 0;
  long count = 0;
  double empirical_prob = 0.0;
  double analytic_prob = 0.0;
  double abs_error = 0.0;
};

struct ComparisonReport {
  ComparisonLaw law = ComparisonLaw::kFirstClickGeometric;
  double p = 0.0;
  long n_clicked = 0;
  bool sufficient_data = false;

  double tv_distance = 0.0;
  double empirical_mean = 0.0;
  double analytic_mean = 0.0;
  double z_mean = 0.0;
  double empirical_var = 0.0;
  double analytic_var = 0.0;
  double z_var = 0.0;
  bool passed = false;

  std::vector<ComparisonRow> rows;

  // Multi-line "key: value" rendering for logs and reports.
  std::string to_text() const;
};

// Compares a first-click histogram against the chosen law at click
// probability law.p. For kLengthWeighted the empirical distribution is
// the length-weighted histogram (each trajectory weighted by its ell).
// Throws InsufficientData when no clicks were recorded at all; fewer than
// thresholds.min_clicks marks the report insufficient and failed.
ComparisonReport compare(const ClickStatistics& stats, const ClickLaw& law,
                         ComparisonLaw comparison,
                         const ComparisonThresholds& thresholds = {});

// z statistic for the difference of first-click means of two runs.
double two_sample_mean_z(const ClickStatistics& a, const ClickStatistics& b);

// Column-oriented numeric table for figure data.
struct FigureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Weighted-law profiles over ell = 1..ell_hi, one column per p.
FigureTable figure1_data(const std::vector<double>& p_list, long ell_hi);
// Variance of the weighted law over a uniform p grid in (0, 1).
FigureTable figure2_data(double p_min = 0.02, double p_max = 0.98,
                         double p_step = 0.02);

}  // namespace pevclock

#endif  // PEVCLOCK_ANALYTICS_HPP_
