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

#include "pevclock/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pevclock/two_state_clock.hpp"

namespace pevclock {

namespace {

void require_p_open_closed(double p, const char* op) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError(std::string(op) + ": p must lie in (0, 1]");
  }
}

// sum over ell >= 1 of ell^k * law(ell), by direct summation. Terms carry
// the factor q^(ell-1); once the term ratio r = ((ell+1)/ell)^k' * q drops
// below 1 the remaining tail is a geometric series bounded by
// term * r / (1 - r), and summation stops when that bound is < 1e-13.
double series_sum(double p, int k, bool weighted) {
  require_p_open_closed(p, "series moment");
  if (k < 0 || k > 8) {
    throw DomainError("series moment: k out of range");
  }
  const double q = 1.0 - p;
  const int ratio_power = k + (weighted ? 1 : 0);
  double acc = 0.0;
  double qpow = 1.0;  // q^(ell-1)
  for (long ell = 1; ell <= 100000000L; ++ell) {
    const double pmf =
        weighted ? double(ell) * p * p * qpow : p * qpow;
    acc += std::pow(double(ell), k) * pmf;
    const double r =
        std::pow(double(ell + 1) / double(ell), ratio_power) * q;
    if (r < 1.0) {
      const double tail =
          std::pow(double(ell), k) * pmf * r / (1.0 - r);
      if (tail < 1e-13) {
        return acc;
      }
    }
    qpow *= q;
  }
  throw DomainError("series moment: no convergence (p too close to 0?)");
}

std::string format_line(const char* key, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s: %.8g\n", key, value);
  return buf;
}

}  // namespace

void ClickLaw::validate() const { require_p_open_closed(p, "ClickLaw"); }

ClickLaw ClickLaw::from_gamma(double gamma, double chi_overlap_sq) {
  TwoStateParams params;
  params.gamma = gamma;
  return ClickLaw{click_probability(params, chi_overlap_sq)};
}

double prob_click_at(double p, long ell) {
  require_p_open_closed(p, "prob_click_at");
  if (ell < 1) {
    throw DomainError("prob_click_at: ell must be >= 1");
  }
  return double(ell) * p * p * std::pow(1.0 - p, double(ell - 1));
}

double first_click_prob_at(double p, long ell) {
  return click_at_step_probability(p, ell);
}

double mean_ell(double p) {
  require_p_open_closed(p, "mean_ell");
  return (2.0 - p) / p;
}

double second_moment_ell(double p) {
  require_p_open_closed(p, "second_moment_ell");
  return (p * p - 6.0 * p + 6.0) / (p * p);
}

double var_ell(double p) {
  require_p_open_closed(p, "var_ell");
  return (2.0 - 2.0 * p) / (p * p);
}

double ell_max(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("ell_max: p must lie in (0, 1)");
  }
  return -1.0 / std::log(1.0 - p);
}

double series_moment_weighted(double p, int k) {
  return series_sum(p, k, true);
}

double series_moment_first_click(double p, int k) {
  return series_sum(p, k, false);
}

ComparisonReport compare(const ClickStatistics& stats, const ClickLaw& law,
                         ComparisonLaw comparison,
                         const ComparisonThresholds& thresholds) {
  law.validate();
  if (stats.n_clicked == 0) {
    throw InsufficientData("compare: click histogram is empty");
  }

  ComparisonReport report;
  report.law = comparison;
  report.p = law.p;
  report.n_clicked = stats.n_clicked;
  report.sufficient_data = stats.n_clicked >= thresholds.min_clicks;

  const bool weighted = comparison == ComparisonLaw::kLengthWeighted;
  const double p = law.p;
  const double q = 1.0 - p;

  // Empirical weights per ell: plain counts, or counts scaled by ell for
  // the length-weighted comparison.
  double total_weight = 0.0;
  long ell_hi = 0;
  for (const auto& [ell, count] : stats.histogram) {
    total_weight += weighted ? double(ell) * double(count) : double(count);
    ell_hi = std::max(ell_hi, ell);
  }

  const auto pmf = [&](long ell) {
    return weighted ? prob_click_at(p, ell) : first_click_prob_at(p, ell);
  };

  // Total variation: covered range plus the analytic tail beyond the
  // largest observed ell (where the empirical mass is zero). The tails
  // have closed forms: q^L for the first-click law, q^L (1 + L p) for the
  // length-weighted law.
  double l1 = 0.0;
  report.rows.reserve(std::size_t(std::min<long>(ell_hi, 100000)));
  auto it = stats.histogram.begin();
  for (long ell = 1; ell <= ell_hi; ++ell) {
    long count = 0;
    if (it != stats.histogram.end() && it->first == ell) {
      count = it->second;
      ++it;
    }
    const double emp =
        (weighted ? double(ell) * double(count) : double(count)) /
        total_weight;
    const double ana = pmf(ell);
    l1 += std::abs(emp - ana);
    if (ell <= 100000) {
      report.rows.push_back(ComparisonRow{ell, count, emp, ana,
                                          std::abs(emp - ana)});
    }
  }
  const double analytic_tail =
      weighted ? std::pow(q, double(ell_hi)) * (1.0 + double(ell_hi) * p)
               : std::pow(q, double(ell_hi));
  report.tv_distance = 0.5 * (l1 + analytic_tail);

  // Moment z-scores, with null-hypothesis standard errors taken from the
  // analytic law itself (series moments, so the closed forms under test
  // do not feed their own check).
  const long n = stats.n_clicked;
  if (weighted) {
    // The estimator is a ratio sum(ell^2)/sum(ell) over n geometric
    // draws; the delta method gives its variance from raw geometric
    // moments m1..m4.
    const double m1 = series_moment_first_click(p, 1);
    const double m2 = series_moment_first_click(p, 2);
    const double m3 = series_moment_first_click(p, 3);
    const double m4 = series_moment_first_click(p, 4);
    const double wbar = series_moment_weighted(p, 1);

    report.empirical_mean = stats.weighted_mean();
    report.analytic_mean = mean_ell(p);
    const double var_num = (m4 - m2 * m2) -
                           2.0 * wbar * (m3 - m2 * m1) +
                           wbar * wbar * (m2 - m1 * m1);
    const double se_mean =
        std::sqrt(std::max(var_num, 0.0) / (double(n) * m1 * m1));
    report.z_mean = (report.empirical_mean - report.analytic_mean) /
                    (se_mean > 0.0 ? se_mean : 1.0);

    // Weighted-variance check with an effective draw count
    // (sum w)^2 / sum w^2; approximate but of the right 1/sqrt(n) scale.
    const double w1 = stats.moment(1);
    const double w2 = stats.moment(2);
    const double n_eff = double(n) * w1 * w1 / std::max(w2, 1e-300);
    const double wm1 = stats.weighted_mean();
    const double wm2 = stats.moment(3) / stats.moment(1);
    report.empirical_var = std::max(0.0, wm2 - wm1 * wm1);
    report.analytic_var = var_ell(p);
    const double mu = series_moment_weighted(p, 1);
    const double s2 = series_moment_weighted(p, 2) - mu * mu;
    const double mu4 = series_moment_weighted(p, 4) -
                       4.0 * mu * series_moment_weighted(p, 3) +
                       6.0 * mu * mu * series_moment_weighted(p, 2) -
                       3.0 * mu * mu * mu * mu;
    const double se_var =
        std::sqrt(std::max(mu4 - s2 * s2, 0.0) / std::max(n_eff, 1.0));
    report.z_var = (report.empirical_var - report.analytic_var) /
                   (se_var > 0.0 ? se_var : 1.0);
  } else {
    report.empirical_mean = stats.mean();
    report.analytic_mean = 1.0 / p;
    const double sigma2 = q / (p * p);
    const double se_mean = std::sqrt(sigma2 / double(n));
    report.z_mean = (report.empirical_mean - report.analytic_mean) /
                    (se_mean > 0.0 ? se_mean : 1.0);

    report.empirical_var = n >= 2 ? stats.variance() : 0.0;
    report.analytic_var = sigma2;
    const double mu = series_moment_first_click(p, 1);
    const double mu4 = series_moment_first_click(p, 4) -
                       4.0 * mu * series_moment_first_click(p, 3) +
                       6.0 * mu * mu * series_moment_first_click(p, 2) -
                       3.0 * mu * mu * mu * mu;
    const double nn = double(n);
    const double se_var = std::sqrt(
        std::max(mu4 - sigma2 * sigma2 * (nn - 3.0) / (nn - 1.0), 0.0) / nn);
    report.z_var = (report.empirical_var - report.analytic_var) /
                   (se_var > 0.0 ? se_var : 1.0);
  }

  report.passed = report.sufficient_data &&
                  report.tv_distance <= thresholds.tv_max &&
                  std::abs(report.z_mean) <= thresholds.z_max &&
                  std::abs(report.z_var) <= thresholds.z_max;
  return report;
}

std::string ComparisonReport::to_text() const {
  std::string out;
  out += "law: ";
  out += law == ComparisonLaw::kFirstClickGeometric ? "first_click_geometric"
                                                    : "length_weighted";
  out += "\n";
  out += format_line("p", p);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "n_clicked: %ld\n", n_clicked);
  out += buf;
  out += format_line("tv_distance", tv_distance);
  out += format_line("empirical_mean", empirical_mean);
  out += format_line("analytic_mean", analytic_mean);
  out += format_line("z_mean", z_mean);
  out += format_line("empirical_var", empirical_var);
  out += format_line("analytic_var", analytic_var);
  out += format_line("z_var", z_var);
  out += std::string("sufficient_data: ") +
         (sufficient_data ? "true" : "false") + "\n";
  out += std::string("result: ") + (passed ? "pass" : "fail") + "\n";
  return out;
}

double two_sample_mean_z(const ClickStatistics& a, const ClickStatistics& b) {
  const double se_a = a.se_mean();
  const double se_b = b.se_mean();
  const double se = std::sqrt(se_a * se_a + se_b * se_b);
  return (a.mean() - b.mean()) / (se > 0.0 ? se : 1.0);
}

FigureTable figure1_data(const std::vector<double>& p_list, long ell_hi) {
  if (p_list.empty() || ell_hi < 1) {
    throw InvalidArgument("figure1_data: need p values and ell_hi >= 1");
  }
  FigureTable table;
  table.columns.push_back("ell");
  for (double p : p_list) {
    require_p_open_closed(p, "figure1_data");
    char buf[48];
    std::snprintf(buf, sizeof(buf), "prob_p%g", p);
    table.columns.push_back(buf);
  }
  for (long ell = 1; ell <= ell_hi; ++ell) {
    std::vector<double> row;
    row.reserve(p_list.size() + 1);
    row.push_back(double(ell));
    for (double p : p_list) {
      row.push_back(prob_click_at(p, ell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

FigureTable figure2_data(double p_min, double p_max, double p_step) {
  if (!(p_min > 0.0 && p_max < 1.0 && p_min <= p_max && p_step > 0.0)) {
    throw InvalidArgument("figure2_data: need 0 < p_min <= p_max < 1");
  }
  FigureTable table;
  table.columns = {"p", "var"};
  for (int i = 0;; ++i) {
    const double p = p_min + double(i) * p_step;
    if (p > p_max + 0.5 * p_step) break;
    table.rows.push_back({p, var_ell(p)});
  }
  return table;
}

}  // namespace pevclock
