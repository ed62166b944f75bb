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

// Finite-dimensional state vectors, orthogonal projector families, and the
// conditional (project-and-renormalize) update they induce. This is the
// algebraic core every higher layer builds on: states are plain complex
// vectors tagged with a basis id, projectors are explicit matrices, and a
// ProjectorSet is an orthogonal resolution of unity.

#ifndef PEVCLOCK_STATE_ALGEBRA_HPP_
#define PEVCLOCK_STATE_ALGEBRA_HPP_

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pevclock/errors.hpp"

namespace pevclock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical tolerances for the structural invariants below. Hermiticity is
// checked at essentially machine precision; idempotence, orthogonality and
// completeness accumulate one matrix product of rounding.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-12;

// A normalized pure state expanded in a fixed orthonormal basis identified
// by `basis_id`. Operations that combine two objects require equal ids;
// the id is an opaque tag, not parsed.
struct StateVector {
  Vector amplitudes;
  std::string basis_id;

  Eigen::Index dim() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }

  // Rescales to unit norm. Zero vectors cannot be normalized.
  void normalize();
  bool is_normalized(double tol = 1e-10) const;
};

// An orthogonal projector stored as an explicit dense matrix. `label`
// names the outcome the projector represents (an eigenvalue tag, a
// readout symbol, ...). Rank is derivable as trace(matrix).
struct Projector {
  Matrix matrix;
  std::string label;
  std::string basis_id;

  Eigen::Index dim() const { return matrix.rows(); }
  double rank() const { return matrix.trace().real(); }
};

// An orthogonal resolution of unity: pairwise-orthogonal projectors that
// sum to the identity on the space tagged by basis_id.
struct ProjectorSet {
  std::vector<Projector> projectors;
  std::string basis_id;

  std::size_t size() const { return projectors.size(); }
  Eigen::Index dim() const {
    return projectors.empty() ? 0 : projectors.front().dim();
  }
};

// A Hermitian operator together with the basis it is expressed in.
struct HermitianOperator {
  Matrix matrix;
  std::string basis_id;
};

// Spectral resolution of a Hermitian operator: one projector per distinct
// (grouped) eigenvalue, eigenvalues ascending, set complete.
struct SpectralDecomposition {
  ProjectorSet set;
  std::vector<double> eigenvalues;
};

// Largest absolute entry of M - M^dagger.
double hermiticity_defect(const Matrix& m);
// Largest absolute entry of M^2 - M.
double idempotence_defect(const Matrix& m);
// Largest absolute entry over all products P_i P_j, i != j.
double orthogonality_defect(const ProjectorSet& set);
// Largest absolute entry of sum(P_i) - identity.
double completeness_defect(const ProjectorSet& set);

// Throws unless `set` is an orthogonal resolution of unity within the
// module tolerances (each member Hermitian and idempotent, members
// pairwise orthogonal, sum equal to the identity).
void validate_projector_set(const ProjectorSet& set);

// Probability of the outcome `p` in state `state`: <state|P|state>.
//
// Requires matching basis ids and a normalized state. The result is
// clamped to [0, 1] against rounding.
double transition_probability(const StateVector& state, const Projector& p);

// Conditional update: project onto `p` and renormalize. The global phase
// is left untouched (no phase is introduced; the representative with
// arbitrary-phase freedom is fixed by the input's phase).
//
// Throws ZeroProjection when the overlap norm is below 1e-14.
StateVector luders_update(const StateVector& state, const Projector& p);

// Spectral projectors of a Hermitian operator. Eigenvalues closer than
// group_tol * (1 + |w|) (adjacent-gap criterion on the sorted spectrum)
// are merged into one degenerate projector. Returned eigenvalues are the
// group means, ascending; labels are the group indices "0", "1", ....
SpectralDecomposition spectral_projectors(const HermitianOperator& op,
                                          double group_tol = 1e-9);

// Basis change op -> U op U^dagger. Throws NonUnitary unless
// max|U U^dagger - I| <= kUnitaryTol.
HermitianOperator conjugate(const HermitianOperator& op, const Matrix& u);

}  // namespace pevclock

#endif  // PEVCLOCK_STATE_ALGEBRA_HPP_
