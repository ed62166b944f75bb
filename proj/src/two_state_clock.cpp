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

#include "pevclock/two_state_clock.hpp"

#include <cmath>

namespace pevclock {

namespace {
constexpr double kHalfPi = 1.57079632679489661923;
}

void TwoStateParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= kHalfPi)) {
    throw InvalidArgument("TwoStateParams: gamma must lie in [0, pi/2]");
  }
  if (!(xi_mean >= 0.0)) {
    throw InvalidArgument("TwoStateParams: xi_mean must be >= 0");
  }
  if (!(temporal_inertia > 0.0)) {
    throw InvalidArgument("TwoStateParams: temporal inertia must be > 0");
  }
}

Eigen::Matrix2cd reconfigure_unitary(double gamma) {
  const double c = std::cos(gamma);
  const std::complex<double> ms(0.0, -std::sin(gamma));
  Eigen::Matrix2cd r;
  r << c, ms, ms, c;
  return r;
}

std::complex<double> transition_amplitude(int sigma_from, int nu, int sigma_to,
                                          double gamma) {
  const auto in_range = [](int v) { return v == 0 || v == 1; };
  if (!in_range(sigma_from) || !in_range(nu) || !in_range(sigma_to)) {
    throw InvalidArgument("transition_amplitude: indices must be 0 or 1");
  }
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  if (sigma_to == sigma_from) {
    return nu == sigma_from ? c * c : s * s;
  }
  // Flip through the branch that matches the start is destructive (-i),
  // through the other branch constructive (+i); both carry sin(2g)/2.
  const double sign = nu == sigma_from ? -1.0 : 1.0;
  return std::complex<double>(0.0, sign * c * s);
}

double click_probability(const TwoStateParams& params, double chi_overlap_sq) {
  params.validate();
  if (!(chi_overlap_sq >= 0.0 && chi_overlap_sq <= 1.0 + 1e-10)) {
    throw InvalidArgument(
        "click_probability: overlap factor must lie in [0, 1]");
  }
  const double s2 = std::sin(2.0 * params.gamma);
  return 0.5 * s2 * s2 * std::min(chi_overlap_sq, 1.0);
}

double click_at_step_probability(double p, long ell) {
  if (ell < 1) {
    throw DomainError("click_at_step_probability: ell must be >= 1");
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("click_at_step_probability: p must lie in (0, 1]");
  }
  return p * std::pow(1.0 - p, double(ell - 1));
}

}  // namespace pevclock
