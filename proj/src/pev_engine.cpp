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

#include "pevclock/pev_engine.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace pevclock {

namespace {

// Coefficients translated by xi and rotated by one cycle, before any
// projection: PG = X * (G/|G|) * conj(R). Entry (lambda, nu) is the
// amplitude on envelope lambda and rotated-frame interface branch nu.
Eigen::MatrixXcd propagate_one_cycle(const ClockModel& model,
                                     const GCoefficients& prev,
                                     const Eigen::MatrixXcd& chi_table) {
  if (prev.norm <= 1e-14) {
    throw ZeroBranch("propagate: previous state has zero norm");
  }
  if (prev.coeffs.rows() != model.n_temporal() ||
      prev.coeffs.cols() != model.n_interface()) {
    throw BasisMismatch("propagate: coefficient shape does not match model");
  }
  const Eigen::MatrixXcd r = reconfigure_rotation(model.reconfigurer,
                                                  model.gamma);
  return chi_table * (prev.coeffs / prev.norm) * r.conjugate();
}

// Zeroes every entry of `pg` outside the generator group, then expresses
// the interface part back in the fixed eigenbasis.
Eigen::MatrixXcd project_generator_group(const ClockModel& model,
                                         const EigenvalueTable& table,
                                         const Eigen::MatrixXcd& pg, int u) {
  if (u < 0 || u >= table.size()) {
    throw TruncationTooSmall("generator group " + std::to_string(u) +
                             " out of range");
  }
  Eigen::MatrixXcd masked =
      Eigen::MatrixXcd::Zero(model.n_temporal(), model.n_interface());
  for (const auto& [lambda, nu] : table.groups[std::size_t(u)].members) {
    masked(lambda, nu) = pg(lambda, nu);
  }
  const Eigen::MatrixXcd r = reconfigure_rotation(model.reconfigurer,
                                                  model.gamma);
  return masked * r.transpose();
}

}  // namespace

std::string ClockModel::product_basis_id() const {
  return "product:T" + std::to_string(n_temporal()) + ":I" +
         std::to_string(n_interface());
}

void ClockModel::validate() const {
  if (temporal_levels.empty()) {
    throw InvalidArgument("ClockModel: no temporal levels");
  }
  if (interface_energies.empty()) {
    throw InvalidArgument("ClockModel: no interface levels");
  }
  if (!(temporal_inertia > 0.0)) {
    throw InvalidArgument("ClockModel: temporal inertia must be > 0");
  }
  if (!(group_tol > 0.0)) {
    throw InvalidArgument("ClockModel: group_tol must be > 0");
  }
  if (!std::isfinite(gamma)) {
    throw InvalidArgument("ClockModel: gamma must be finite");
  }
  if (reconfigurer.rows() != n_interface() ||
      reconfigurer.cols() != n_interface()) {
    throw InvalidArgument("ClockModel: reconfigurer shape must match levels");
  }
  if (hermiticity_defect(reconfigurer) > kHermitianTol) {
    throw InvalidArgument("ClockModel: reconfigurer not Hermitian");
  }
  if (!std::is_sorted(interface_energies.begin(), interface_energies.end())) {
    throw InvalidArgument("ClockModel: interface energies must ascend");
  }
  const TemporalGrid& grid = temporal_levels.front().f.grid;
  for (const auto& level : temporal_levels) {
    if (!level.f.grid.same_as(grid)) {
      throw GridMismatch("ClockModel: temporal levels on different grids");
    }
    if (!level.f.is_normalized(1e-6)) {
      throw NotNormalized("ClockModel: temporal level " +
                          std::to_string(level.lambda_index) +
                          " not normalized");
    }
  }
}

int EigenvalueTable::group_of(int lambda, int nu) const {
  for (int g = 0; g < size(); ++g) {
    for (const auto& [l, v] : groups[std::size_t(g)].members) {
      if (l == lambda && v == nu) return g;
    }
  }
  throw TruncationTooSmall("EigenvalueTable: pair (" + std::to_string(lambda) +
                           ", " + std::to_string(nu) + ") not in table");
}

int EigenvalueTable::find_group(double w, double tol) const {
  for (int g = 0; g < size(); ++g) {
    if (std::abs(groups[std::size_t(g)].w - w) <= tol * (1.0 + std::abs(w))) {
      return g;
    }
  }
  throw TruncationTooSmall("EigenvalueTable: no group near w=" +
                           std::to_string(w));
}

EigenvalueTable build_eigenvalue_table(const ClockModel& model) {
  model.validate();
  std::vector<std::tuple<double, int, int>> entries;
  entries.reserve(std::size_t(model.n_temporal()) *
                  std::size_t(model.n_interface()));
  for (int lambda = 0; lambda < model.n_temporal(); ++lambda) {
    const double eps = model.temporal_levels[std::size_t(lambda)].epsilon_t;
    for (int nu = 0; nu < model.n_interface(); ++nu) {
      entries.emplace_back(eps - model.interface_energies[std::size_t(nu)],
                           lambda, nu);
    }
  }
  std::sort(entries.begin(), entries.end());

  EigenvalueTable table;
  std::size_t begin = 0;
  while (begin < entries.size()) {
    std::size_t end = begin + 1;
    while (end < entries.size() &&
           std::get<0>(entries[end]) - std::get<0>(entries[end - 1]) <=
               model.group_tol * (1.0 + std::abs(std::get<0>(entries[end])))) {
      ++end;
    }
    EigenvalueTable::Group group;
    double acc = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      acc += std::get<0>(entries[k]);
      group.members.emplace_back(std::get<1>(entries[k]),
                                 std::get<2>(entries[k]));
    }
    group.w = acc / double(end - begin);
    table.groups.push_back(std::move(group));
    begin = end;
  }
  return table;
}

InterfaceGroups build_interface_groups(const ClockModel& model) {
  InterfaceGroups groups;
  groups.label_of.resize(std::size_t(model.n_interface()), -1);
  int nu = 0;
  while (nu < model.n_interface()) {
    std::vector<int> block{nu};
    int next = nu + 1;
    while (next < model.n_interface() &&
           model.interface_energies[std::size_t(next)] -
                   model.interface_energies[std::size_t(next - 1)] <=
               model.group_tol *
                   (1.0 +
                    std::abs(model.interface_energies[std::size_t(next)]))) {
      block.push_back(next);
      ++next;
    }
    for (int member : block) {
      groups.label_of[std::size_t(member)] = int(groups.members.size());
    }
    groups.members.push_back(std::move(block));
    nu = next;
  }
  return groups;
}

Eigen::MatrixXcd reconfigure_rotation(const Eigen::MatrixXcd& a,
                                      double angle) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument("reconfigure_rotation: matrix must be square");
  }
  if (hermiticity_defect(a) > kHermitianTol) {
    throw InvalidArgument("reconfigure_rotation: generator not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("reconfigure_rotation: eigensolver failed");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::exp(std::complex<double>(0.0, -angle * w(k)));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

GeneratorSnapshot initial_snapshot(const ClockModel& model) {
  model.validate();
  GeneratorSnapshot snap;
  snap.interface_frame =
      Eigen::MatrixXcd::Identity(model.n_interface(), model.n_interface());
  return snap;
}

GeneratorSnapshot advance_snapshot(const ClockModel& model,
                                   const GeneratorSnapshot& snap, double xi) {
  if (!std::isfinite(xi)) {
    throw InvalidArgument("advance_snapshot: xi must be finite");
  }
  GeneratorSnapshot next;
  next.step_index = snap.step_index + 1;
  next.beta = snap.beta + xi;
  next.interface_frame =
      reconfigure_rotation(model.reconfigurer, model.gamma) *
      snap.interface_frame;
  return next;
}

ProjectorSet build_evolution_operators(const ClockModel& model,
                                       const GeneratorSnapshot& snap) {
  model.validate();
  if (snap.interface_frame.rows() != model.n_interface()) {
    throw BasisMismatch("build_evolution_operators: frame shape mismatch");
  }
  const EigenvalueTable table = build_eigenvalue_table(model);
  const int m = model.n_interface();
  const Eigen::Index dim = model.product_dim();

  ProjectorSet set;
  set.basis_id = model.product_basis_id();
  for (const auto& group : table.groups) {
    Projector p;
    p.matrix = Matrix::Zero(dim, dim);
    p.basis_id = set.basis_id;
    p.label = "w=" + std::to_string(group.w);
    for (const auto& [lambda, nu] : group.members) {
      const Eigen::VectorXcd column = snap.interface_frame.col(nu);
      p.matrix.block(lambda * m, lambda * m, m, m) +=
          column * column.adjoint();
    }
    set.projectors.push_back(std::move(p));
  }
  return set;
}

ProjectorSet interface_projectors(const ClockModel& model) {
  model.validate();
  const InterfaceGroups groups = build_interface_groups(model);
  const int m = model.n_interface();
  const Eigen::Index dim = model.product_dim();

  ProjectorSet set;
  set.basis_id = model.product_basis_id();
  for (std::size_t label = 0; label < groups.members.size(); ++label) {
    Projector p;
    p.matrix = Matrix::Zero(dim, dim);
    p.basis_id = set.basis_id;
    p.label = std::to_string(label);
    for (int nu : groups.members[label]) {
      for (int lambda = 0; lambda < model.n_temporal(); ++lambda) {
        p.matrix(lambda * m + nu, lambda * m + nu) = 1.0;
      }
    }
    set.projectors.push_back(std::move(p));
  }
  return set;
}

GCoefficients initial_eigenstate(const ClockModel& model, int lambda0,
                                 int nu0) {
  model.validate();
  if (lambda0 < 0 || nu0 < 0) {
    throw InvalidArgument("initial_eigenstate: negative index");
  }
  if (lambda0 >= model.n_temporal() || nu0 >= model.n_interface()) {
    throw TruncationTooSmall("initial_eigenstate: (" +
                             std::to_string(lambda0) + ", " +
                             std::to_string(nu0) +
                             ") outside the truncated model");
  }
  GCoefficients g;
  g.coeffs = Eigen::MatrixXcd::Zero(model.n_temporal(), model.n_interface());
  g.coeffs(lambda0, nu0) = 1.0;
  g.norm = 1.0;
  g.sigma = build_interface_groups(model).label_of[std::size_t(nu0)];
  g.u = build_eigenvalue_table(model).group_of(lambda0, nu0);
  return g;
}

Eigen::MatrixXcd chi_overlap_table(const ClockModel& model, double xi) {
  const int l = model.n_temporal();
  Eigen::MatrixXcd table(l, l);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, -model.temporal_inertia * xi));
  const double h = model.temporal_levels.front().f.grid.spacing();
  for (int a = 0; a < l; ++a) {
    const TemporalGridFunction moved =
        shift(model.temporal_levels[std::size_t(a)].f, xi);
    for (int b = 0; b < l; ++b) {
      table(a, b) =
          phase * (h * (moved.values.adjoint() *
                        model.temporal_levels[std::size_t(b)].f.values)(0));
    }
  }
  return table;
}

GCoefficients g_recurrence_step(const ClockModel& model,
                                const GCoefficients& prev, int sigma_n,
                                int u_n, double xi_n) {
  return g_recurrence_step(model, prev, sigma_n, u_n, xi_n,
                           chi_overlap_table(model, xi_n));
}

GCoefficients g_recurrence_step(const ClockModel& model,
                                const GCoefficients& prev, int sigma_n,
                                int u_n, double /*xi_n: folded into chi_table*/,
                                const Eigen::MatrixXcd& chi_table) {
  const EigenvalueTable table = build_eigenvalue_table(model);
  const InterfaceGroups groups = build_interface_groups(model);
  if (sigma_n < 0 || sigma_n >= groups.size()) {
    throw TruncationTooSmall("g_recurrence_step: sigma " +
                             std::to_string(sigma_n) + " out of range");
  }

  const Eigen::MatrixXcd pg = propagate_one_cycle(model, prev, chi_table);
  const Eigen::MatrixXcd in_eigenbasis =
      project_generator_group(model, table, pg, u_n);

  GCoefficients next;
  next.coeffs =
      Eigen::MatrixXcd::Zero(model.n_temporal(), model.n_interface());
  for (int nu : groups.members[std::size_t(sigma_n)]) {
    next.coeffs.col(nu) = in_eigenbasis.col(nu);
  }
  next.step_index = prev.step_index + 1;
  next.norm = next.coeffs.norm();
  next.sigma = sigma_n;
  next.u = u_n;
  if (next.norm <= 1e-14) {
    throw ZeroBranch("g_recurrence_step: branch (sigma=" +
                     std::to_string(sigma_n) + ", u=" + std::to_string(u_n) +
                     ") has zero probability");
  }
  return next;
}

double path_probability(const GCoefficients& g) { return g.norm * g.norm; }

BranchTable enumerate_branches(const ClockModel& model,
                               const GCoefficients& prev, double xi) {
  return enumerate_branches(model, prev, xi, chi_overlap_table(model, xi));
}

BranchTable enumerate_branches(const ClockModel& model,
                               const GCoefficients& prev,
                               double /*xi: folded into chi_table*/,
                               const Eigen::MatrixXcd& chi_table) {
  const EigenvalueTable table = build_eigenvalue_table(model);
  const InterfaceGroups groups = build_interface_groups(model);
  const Eigen::MatrixXcd pg = propagate_one_cycle(model, prev, chi_table);

  BranchTable out;
  out.branches.reserve(std::size_t(table.size()) *
                       std::size_t(groups.size()));
  for (int u = 0; u < table.size(); ++u) {
    const Eigen::MatrixXcd in_eigenbasis =
        project_generator_group(model, table, pg, u);
    for (int sigma = 0; sigma < groups.size(); ++sigma) {
      double prob = 0.0;
      for (int nu : groups.members[std::size_t(sigma)]) {
        prob += in_eigenbasis.col(nu).squaredNorm();
      }
      out.branches.push_back(BranchTable::Branch{u, sigma, prob});
      out.total += prob;
    }
  }
  return out;
}

double clock_reading_expectation(const ClockModel& model,
                                 const GCoefficients& g, double beta) {
  model.validate();
  if (g.norm <= 1e-14) {
    throw ZeroBranch("clock_reading_expectation: zero-norm state");
  }
  const int l = model.n_temporal();
  const TemporalGrid& grid = model.temporal_levels.front().f.grid;
  const double h = grid.spacing();

  // T(l1, l2) = h sum_i t_i conj(f_l1(t_i)) f_l2(t_i), unshifted.
  Eigen::MatrixXcd t_matrix(l, l);
  for (int a = 0; a < l; ++a) {
    for (int b = a; b < l; ++b) {
      std::complex<double> acc = 0.0;
      const auto& fa = model.temporal_levels[std::size_t(a)].f.values;
      const auto& fb = model.temporal_levels[std::size_t(b)].f.values;
      for (Eigen::Index i = 0; i < fa.size(); ++i) {
        acc += grid.point(i) * std::conj(fa(i)) * fb(i);
      }
      t_matrix(a, b) = h * acc;
      t_matrix(b, a) = std::conj(h * acc);
    }
  }
  const std::complex<double> weighted =
      (g.coeffs.adjoint() * t_matrix * g.coeffs).trace();
  return beta + weighted.real() / (g.norm * g.norm);
}

}  // namespace pevclock
