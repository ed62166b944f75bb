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

#include "pevclock/state_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace pevclock {

namespace {

void require_same_basis(const std::string& a, const std::string& b,
                        Eigen::Index dim_a, Eigen::Index dim_b,
                        const char* op) {
  if (dim_a != dim_b) {
    throw BasisMismatch(std::string(op) + ": dimension mismatch (" +
                        std::to_string(dim_a) + " vs " + std::to_string(dim_b) +
                        ")");
  }
  if (a != b) {
    throw BasisMismatch(std::string(op) + ": basis mismatch ('" + a + "' vs '" +
                        b + "')");
  }
}

}  // namespace

void StateVector::normalize() {
  const double n = amplitudes.norm();
  if (n <= 1e-14) {
    throw InvalidArgument("normalize: zero state vector");
  }
  amplitudes /= n;
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(amplitudes.norm() - 1.0) <= tol;
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double idempotence_defect(const Matrix& m) {
  return (m * m - m).cwiseAbs().maxCoeff();
}

double orthogonality_defect(const ProjectorSet& set) {
  double worst = 0.0;
  for (std::size_t i = 0; i < set.projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < set.projectors.size(); ++j) {
      const double d = (set.projectors[i].matrix * set.projectors[j].matrix)
                           .cwiseAbs()
                           .maxCoeff();
      worst = std::max(worst, d);
    }
  }
  return worst;
}

double completeness_defect(const ProjectorSet& set) {
  if (set.projectors.empty()) {
    throw InvalidArgument("completeness_defect: empty projector set");
  }
  const Eigen::Index n = set.dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& p : set.projectors) {
    if (p.dim() != n) {
      throw BasisMismatch("completeness_defect: ragged projector dimensions");
    }
    sum += p.matrix;
  }
  return (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

void validate_projector_set(const ProjectorSet& set) {
  if (set.projectors.empty()) {
    throw InvalidArgument("validate_projector_set: empty set");
  }
  for (const auto& p : set.projectors) {
    if (p.basis_id != set.basis_id) {
      throw BasisMismatch("validate_projector_set: member '" + p.label +
                          "' tagged '" + p.basis_id + "', set tagged '" +
                          set.basis_id + "'");
    }
    if (hermiticity_defect(p.matrix) > kHermitianTol) {
      throw InvalidArgument("validate_projector_set: member '" + p.label +
                            "' not Hermitian");
    }
    if (idempotence_defect(p.matrix) > kProjectorTol) {
      throw InvalidArgument("validate_projector_set: member '" + p.label +
                            "' not idempotent");
    }
  }
  if (orthogonality_defect(set) > kProjectorTol) {
    throw InvalidArgument("validate_projector_set: members not orthogonal");
  }
  if (completeness_defect(set) > kProjectorTol) {
    throw InvalidArgument("validate_projector_set: members do not sum to 1");
  }
}

double transition_probability(const StateVector& state, const Projector& p) {
  require_same_basis(state.basis_id, p.basis_id, state.dim(), p.dim(),
                     "transition_probability");
  if (!state.is_normalized()) {
    throw NotNormalized("transition_probability: state not normalized");
  }
  const double prob =
      (state.amplitudes.adjoint() * p.matrix * state.amplitudes)(0).real();
  return std::clamp(prob, 0.0, 1.0);
}

StateVector luders_update(const StateVector& state, const Projector& p) {
  require_same_basis(state.basis_id, p.basis_id, state.dim(), p.dim(),
                     "luders_update");
  Vector projected = p.matrix * state.amplitudes;
  const double n = projected.norm();
  if (n <= 1e-14) {
    throw ZeroProjection("luders_update: outcome '" + p.label +
                         "' has zero overlap with the state");
  }
  return StateVector{projected / n, state.basis_id};
}

SpectralDecomposition spectral_projectors(const HermitianOperator& op,
                                          double group_tol) {
  if (group_tol <= 0.0) {
    throw InvalidArgument("spectral_projectors: group_tol must be positive");
  }
  if (op.matrix.rows() != op.matrix.cols() || op.matrix.rows() == 0) {
    throw InvalidArgument("spectral_projectors: matrix must be square");
  }
  if (hermiticity_defect(op.matrix) > kHermitianTol) {
    throw InvalidArgument("spectral_projectors: operator not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("spectral_projectors: eigensolver did not converge");
  }
  const auto& w = solver.eigenvalues();   // ascending
  const auto& v = solver.eigenvectors();  // orthonormal columns

  SpectralDecomposition out;
  out.set.basis_id = op.basis_id;
  Eigen::Index begin = 0;
  while (begin < w.size()) {
    Eigen::Index end = begin + 1;
    while (end < w.size() &&
           w(end) - w(end - 1) <= group_tol * (1.0 + std::abs(w(end)))) {
      ++end;
    }
    const Eigen::Index count = end - begin;
    const Matrix block = v.middleCols(begin, count);
    Projector p;
    p.matrix = block * block.adjoint();
    p.basis_id = op.basis_id;
    p.label = std::to_string(out.set.projectors.size());
    out.set.projectors.push_back(std::move(p));
    out.eigenvalues.push_back(w.segment(begin, count).mean());
    begin = end;
  }
  return out;
}

HermitianOperator conjugate(const HermitianOperator& op, const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() != op.matrix.rows()) {
    throw BasisMismatch("conjugate: dimension mismatch");
  }
  const double defect =
      (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kUnitaryTol) {
    throw NonUnitary("conjugate: matrix is not unitary (defect " +
                     std::to_string(defect) + ")");
  }
  return HermitianOperator{u * op.matrix * u.adjoint(), op.basis_id};
}

}  // namespace pevclock
