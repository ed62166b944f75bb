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

// The clock's temporal degree of freedom, discretized on a uniform grid.
//
// A temporal envelope f(t) solves the stationary problem
//
//     -(1/(2 m_T)) f'' + V_T(t) f = e f,
//
// and enters the clock as chi(t) = exp(-i m_T t) f(t). The sector
// eigenvalue stored with each solution is epsilon_T = m_T/2 - e, so that
// larger e (more envelope curvature) means smaller epsilon_T. A clock tick
// rigidly translates envelopes along the axis; the only quantities the
// evolution engine ever needs from this module are translated-envelope
// overlaps and first/second moments of t, all evaluated with the plain
// grid quadrature h * sum(...) that also defines normalization.

#ifndef PEVCLOCK_TEMPORAL_SECTOR_HPP_
#define PEVCLOCK_TEMPORAL_SECTOR_HPP_

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "pevclock/errors.hpp"

namespace pevclock {

// Uniform grid over [t_min, t_max] with n_points interior samples.
// Endpoints carry implicit Dirichlet zeros: point(i) = t_min + (i+1)*h with
// h = (t_max - t_min)/(n_points + 1), so samples exclude the boundary.
struct TemporalGrid {
  double t_min = 0.0;
  double t_max = 0.0;
  Eigen::Index n_points = 0;

  double spacing() const { return (t_max - t_min) / double(n_points + 1); }
  double point(Eigen::Index i) const {
    return t_min + double(i + 1) * spacing();
  }
  double span() const { return t_max - t_min; }
  bool same_as(const TemporalGrid& other, double tol = 1e-12) const;
};

// A complex-valued function sampled on a TemporalGrid. Normalization and
// all inner products use the quadrature h * sum over grid samples.
struct TemporalGridFunction {
  TemporalGrid grid;
  Eigen::VectorXcd values;

  double grid_norm() const;
  bool is_normalized(double tol = 1e-8) const;
  void normalize();
};

enum class PotentialKind { kHarmonic, kSquareWell, kFreeBox };

// Confining potential V_T(t). The harmonic kind is (m_T/2) omega^2 t^2;
// the square well is 0 inside |t| <= half_width and `height` outside;
// the free box is identically zero (confinement by the grid boundary).
struct TemporalPotential {
  PotentialKind kind = PotentialKind::kHarmonic;
  double omega = 1.0;
  double half_width = 1.0;
  double height = 0.0;

  double value(double t, double temporal_inertia) const;

  static TemporalPotential harmonic(double omega);
  static TemporalPotential square_well(double half_width, double height);
  static TemporalPotential free_box();
};

// Full specification of a temporal sector: inertia parameter, potential,
// and the discretization grid.
struct TemporalModel {
  double temporal_inertia = 1.0;  // m_T, must be > 0
  TemporalPotential potential;
  TemporalGrid grid;
};

// One solved bound state: the envelope f_lambda (real data stored as
// complex, grid-normalized, sign fixed so the largest-magnitude sample is
// positive) and the sector eigenvalue epsilon_T = m_T/2 - e_lambda.
struct TemporalEigenpair {
  int lambda_index = 0;
  double epsilon_t = 0.0;
  TemporalGridFunction f;
};

// Grid sized for the harmonic default: half-width 12/sqrt(m_T*omega)
// (covers every state used in practice to far below quadrature error)
// with 4096 interior points.
TemporalGrid default_grid(double temporal_inertia, double omega,
                          Eigen::Index n_points = 4096);

// Solves for the n_states lowest envelopes of the model with a
// second-order central finite-difference Laplacian and Dirichlet walls.
// Results are ordered by ascending e (descending epsilon_T).
//
// Throws GridTooCoarse when n_states > n_points/4, NonConvergence on
// eigensolver failure.
std::vector<TemporalEigenpair> solve_temporal_eigenproblem(
    const TemporalModel& model, int n_states);

// First moment h * sum t_i |f(t_i)|^2 of a normalized grid function.
double time_expectation(const TemporalGridFunction& f);

// Central second moment of t; clamped at zero against rounding.
double time_variance(const TemporalGridFunction& f);

// Expectation of the temporal momentum in the full state chi = e^{-i m_T t} f:
// m_T plus the central-difference derivative term of the envelope. For a
// real envelope the correction vanishes and the result is exactly m_T.
double temporal_momentum_expectation(const TemporalGridFunction& f,
                                     double temporal_inertia);

// Rigid translation f(t) -> f(t - xi), resampled on the same grid with
// 4-point (cubic Lagrange) interpolation; points pulled from beyond the
// grid read as zero. Throws ShiftTooLarge when |xi| >= span/4.
TemporalGridFunction shift(const TemporalGridFunction& f, double xi);

// Overlap of translated full states:
//
//   <chi_a(.-xi) | chi_b> = exp(-i m_T xi) * h * sum conj(f_a(t-xi)) f_b(t).
//
// Both inputs must be normalized and share a grid. |result| <= 1 up to
// interpolation error.
std::complex<double> chi_overlap(const TemporalGridFunction& f_a,
                                 const TemporalGridFunction& f_b, double xi,
                                 double temporal_inertia);

}  // namespace pevclock

#endif  // PEVCLOCK_TEMPORAL_SECTOR_HPP_
