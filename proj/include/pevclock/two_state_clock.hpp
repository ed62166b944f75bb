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

// Closed forms for the minimal clock: a two-level interface whose
// reconfiguration unitary rotates by angle gamma in the plane of the two
// energy eigenstates, read out in that same eigenbasis after every cycle.
//
// One cycle maps an interface eigenstate through the rotation
// R = exp(-i gamma X), X the exchange operator, and a readout. With the
// temporal envelope unchanged, the per-cycle probability of the readout
// flipping ("click") is
//
//     p = (1/2) sin^2(2 gamma) * |overlap|^2  <=  1/2,
//
// independent of the step, so waiting times for the first click are
// geometric. These formulas are the oracle against which the general
// engine is validated.

#ifndef PEVCLOCK_TWO_STATE_CLOCK_HPP_
#define PEVCLOCK_TWO_STATE_CLOCK_HPP_

#include <complex>

#include <Eigen/Dense>

#include "pevclock/errors.hpp"

namespace pevclock {

// How the temporal-envelope overlap factor |<chi(.-xi)|chi>|^2 is treated
// by the closed-form runner: as exactly 1 (the narrow-envelope
// approximation) or evaluated on the grid from a solved ground state.
enum class OverlapMode { kUnitApproximation, kExactGrid };

struct TwoStateParams {
  double gamma = 0.25;               // rotation angle per cycle, radians
  double temporal_inertia = 1.0;     // m_T
  double xi_mean = 0.01;             // mean tick length, >= 0
  OverlapMode overlap_mode = OverlapMode::kUnitApproximation;

  // Throws InvalidArgument outside gamma in [0, pi/2], xi_mean < 0,
  // temporal_inertia <= 0. The closed interval admits the degenerate
  // endpoints (gamma=0 never clicks, gamma=pi/2 swaps with certainty
  // every second cycle).
  void validate() const;
};

// The one-cycle interface rotation exp(-i gamma X) where X exchanges the
// two basis states:
//
//     [ cos g     -i sin g ]
//     [ -i sin g   cos g   ].
Eigen::Matrix2cd reconfigure_unitary(double gamma);

// Amplitude for the interface chain
//   eigenstate sigma_from --rotation--> generator branch nu
//   --rotation + readout--> eigenstate sigma_to
// over one full cycle, i.e. R(sigma_to, nu) * conj(R(sigma_from, nu)).
//
// Closed forms: nu == sigma_from keeps cos^2(g) (stay) and
// -i/2 sin(2g) (flip); nu != sigma_from gives sin^2(g) (stay) and
// +i/2 sin(2g) (flip). Indices must be 0 or 1.
std::complex<double> transition_amplitude(int sigma_from, int nu, int sigma_to,
                                          double gamma);

// Per-cycle click probability (1/2) sin^2(2 gamma) * chi_overlap_sq.
// chi_overlap_sq must lie in [0, 1].
double click_probability(const TwoStateParams& params, double chi_overlap_sq);

// Probability that the first click lands exactly at cycle ell >= 1 when
// each cycle clicks independently with probability p: p (1-p)^(ell-1).
double click_at_step_probability(double p, long ell);

}  // namespace pevclock

#endif  // PEVCLOCK_TWO_STATE_CLOCK_HPP_
