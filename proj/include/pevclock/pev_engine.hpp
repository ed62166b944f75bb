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

// General clock-cycle engine on the truncated product space
// (temporal envelopes) x (interface energy eigenstates).
//
// One cycle applies two conditional updates to the coefficient matrix
// G(lambda, m) of the state sum_{lambda,m} G * chi_lambda x phi_m:
//
//   1. an evolution-generator readout: the temporal envelopes translate by
//      the sampled tick length xi, the interface rotates one cycle angle
//      through exp(-i gamma A), and the state is projected onto one
//      eigenvalue group u of the generator table w(lambda, nu) =
//      epsilon_lambda - E_nu;
//   2. an interface readout: projection onto one energy label sigma in the
//      fixed eigenbasis of the interface Hamiltonian.
//
// Branch bookkeeping stores the *unnormalized* coefficients after the two
// projections; their squared norm is the branch probability given the
// previous (normalized) state, so the recurrence divides by the previous
// norm exactly once per cycle. Over all (u, sigma) pairs at fixed xi the
// probabilities sum to 1 up to basis-truncation leakage.
//
// The cumulative translation beta_n = sum(xi_k) is carried as a number, so
// envelope overlaps and readout moments are always evaluated at per-cycle
// shifts; the grid never sees beta_n. The cycle count also accumulates the
// interface rotation frame exp(-i n gamma A), used when materializing the
// cycle-n projector families explicitly.

#ifndef PEVCLOCK_PEV_ENGINE_HPP_
#define PEVCLOCK_PEV_ENGINE_HPP_

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pevclock/state_algebra.hpp"
#include "pevclock/temporal_sector.hpp"

namespace pevclock {

// Static description of a truncated clock: L solved temporal envelopes,
// M interface energy levels (ascending), the Hermitian reconfigurer A
// acting on the interface, and the per-cycle rotation angle gamma.
// Immutable after construction; safe to share across threads.
struct ClockModel {
  double temporal_inertia = 1.0;
  std::vector<TemporalEigenpair> temporal_levels;
  std::vector<double> interface_energies;
  Eigen::MatrixXcd reconfigurer;
  double gamma = 0.25;
  double group_tol = 1e-9;

  int n_temporal() const { return int(temporal_levels.size()); }
  int n_interface() const { return int(interface_energies.size()); }
  Eigen::Index product_dim() const {
    return Eigen::Index(n_temporal()) * n_interface();
  }
  std::string product_basis_id() const;

  // Throws InvalidArgument on structural problems: empty sectors, a
  // non-Hermitian reconfigurer, unsorted energies, mismatched grids,
  // non-normalized envelopes.
  void validate() const;
};

// Distinct-eigenvalue table of the evolution generator restricted to the
// truncated space: every w(lambda, nu) = epsilon_lambda - E_nu, grouped by
// the adjacent-gap criterion with tolerance group_tol * (1 + |w|). Group
// indices (ascending w) are the branch labels `u` used everywhere below.
struct EigenvalueTable {
  struct Group {
    double w = 0.0;                             // group mean
    std::vector<std::pair<int, int>> members;   // (lambda, nu) pairs
  };
  std::vector<Group> groups;

  int size() const { return int(groups.size()); }
  // Group index containing the pair (lambda, nu).
  int group_of(int lambda, int nu) const;
  // Group whose mean lies within tol of w; throws TruncationTooSmall if
  // no group matches.
  int find_group(double w, double tol = 1e-9) const;
};

EigenvalueTable build_eigenvalue_table(const ClockModel& model);

// Interface readout labels: energies equal within group_tol share one
// label sigma. For nondegenerate spectra this is the identity map.
struct InterfaceGroups {
  std::vector<std::vector<int>> members;  // label -> level indices
  std::vector<int> label_of;              // level index -> label

  int size() const { return int(members.size()); }
};

InterfaceGroups build_interface_groups(const ClockModel& model);

// Frame data that evolves deterministically with the cycle count: the
// number of completed cycles, the accumulated translation beta_n and the
// accumulated interface rotation exp(-i n gamma A).
struct GeneratorSnapshot {
  int step_index = 0;
  double beta = 0.0;
  Eigen::MatrixXcd interface_frame;  // exp(-i * step_index * gamma * A)
};

GeneratorSnapshot initial_snapshot(const ClockModel& model);
// Advances the frame one cycle: step count +1, beta += xi, frame
// left-multiplied by the one-cycle rotation (group law of the family).
GeneratorSnapshot advance_snapshot(const ClockModel& model,
                                   const GeneratorSnapshot& snap, double xi);

// exp(-i * angle * A) for Hermitian A, via spectral decomposition.
Eigen::MatrixXcd reconfigure_rotation(const Eigen::MatrixXcd& a, double angle);

// Materialized projector family for the cycle-n evolution readout: one
// projector per generator eigenvalue group, built in the snapshot's
// rotated interface frame on the product space (temporal index major,
// interface index minor). The family is an orthogonal resolution of unity.
ProjectorSet build_evolution_operators(const ClockModel& model,
                                       const GeneratorSnapshot& snap);

// Projector family for the interface readout: one projector per energy
// label, in the *fixed* interface eigenbasis, identity on the temporal
// factor.
ProjectorSet interface_projectors(const ClockModel& model);

// Coefficient matrix after a cycle's two projections, kept unnormalized.
// norm is the 2-norm of coeffs; norm^2 is the probability of the branch
// (sigma, u) given the previous normalized state.
struct GCoefficients {
  Eigen::MatrixXcd coeffs;  // (lambda, m), raw
  int step_index = 0;
  double norm = 1.0;
  int sigma = 0;  // interface label realized at this cycle
  int u = 0;      // generator group realized at this cycle
};

// State concentrated on one product eigenstate (lambda0, nu0), the
// standard cycle-0 preparation. Throws TruncationTooSmall for indices
// outside the model.
GCoefficients initial_eigenstate(const ClockModel& model, int lambda0,
                                 int nu0);

// Envelope-overlap matrix X(l, l2) = <chi_l(.-xi) | chi_l2> for one cycle
// at tick length xi. Hermitian up to interpolation error at xi = 0.
Eigen::MatrixXcd chi_overlap_table(const ClockModel& model, double xi);

// One full cycle conditioned on branch (sigma_n, u_n) at tick length
// xi_n. The previous coefficients are normalized internally (division by
// prev.norm), translated/rotated, and doubly projected. Throws ZeroBranch
// when the branch norm falls below 1e-14.
//
// The overload taking a precomputed overlap table avoids recomputing
// X when xi repeats across calls.
GCoefficients g_recurrence_step(const ClockModel& model,
                                const GCoefficients& prev, int sigma_n,
                                int u_n, double xi_n);
GCoefficients g_recurrence_step(const ClockModel& model,
                                const GCoefficients& prev, int sigma_n,
                                int u_n, double xi_n,
                                const Eigen::MatrixXcd& chi_table);

// Probability of the branch that produced `g` (squared norm).
double path_probability(const GCoefficients& g);

// All branch probabilities for the next cycle from `prev` at fixed xi.
// total is their sum: 1 minus truncation leakage.
struct BranchTable {
  struct Branch {
    int u = 0;
    int sigma = 0;
    double probability = 0.0;
  };
  std::vector<Branch> branches;  // ordered by (u, sigma)
  double total = 0.0;
};

BranchTable enumerate_branches(const ClockModel& model,
                               const GCoefficients& prev, double xi);
BranchTable enumerate_branches(const ClockModel& model,
                               const GCoefficients& prev, double xi,
                               const Eigen::MatrixXcd& chi_table);

// Clock reading carried by a branch state: the accumulated translation
// beta plus the expectation of t in the normalized coefficients, built
// from *unshifted* envelope matrix elements
// T(l1, l2) = h sum t conj(f_l1) f_l2.
double clock_reading_expectation(const ClockModel& model,
                                 const GCoefficients& g, double beta);

}  // namespace pevclock

#endif  // PEVCLOCK_PEV_ENGINE_HPP_
