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

#include "pevclock/temporal_sector.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>

namespace pevclock {

namespace {

constexpr Eigen::Index kMinGridPoints = 16;

void require_valid_grid(const TemporalGrid& grid, const char* op) {
  if (!(grid.t_max > grid.t_min)) {
    throw InvalidArgument(std::string(op) + ": grid needs t_max > t_min");
  }
  if (grid.n_points < kMinGridPoints) {
    throw InvalidArgument(std::string(op) + ": grid needs at least " +
                          std::to_string(kMinGridPoints) + " points");
  }
}

void require_normalized(const TemporalGridFunction& f, const char* op) {
  if (!f.is_normalized(1e-6)) {
    throw NotNormalized(std::string(op) + ": grid function not normalized (norm " +
                        std::to_string(f.grid_norm()) + ")");
  }
}

}  // namespace

bool TemporalGrid::same_as(const TemporalGrid& other, double tol) const {
  return n_points == other.n_points && std::abs(t_min - other.t_min) <= tol &&
         std::abs(t_max - other.t_max) <= tol;
}

double TemporalGridFunction::grid_norm() const {
  return std::sqrt(grid.spacing() * values.squaredNorm());
}

bool TemporalGridFunction::is_normalized(double tol) const {
  return std::abs(grid_norm() - 1.0) <= tol;
}

void TemporalGridFunction::normalize() {
  const double n = grid_norm();
  if (n <= 1e-14) {
    throw InvalidArgument("TemporalGridFunction::normalize: zero function");
  }
  values /= n;
}

double TemporalPotential::value(double t, double temporal_inertia) const {
  switch (kind) {
    case PotentialKind::kHarmonic:
      return 0.5 * temporal_inertia * omega * omega * t * t;
    case PotentialKind::kSquareWell:
      return std::abs(t) <= half_width ? 0.0 : height;
    case PotentialKind::kFreeBox:
      return 0.0;
  }
  throw InvalidArgument("TemporalPotential::value: unknown kind");
}

TemporalPotential TemporalPotential::harmonic(double omega) {
  if (omega <= 0.0) {
    throw InvalidArgument("TemporalPotential::harmonic: omega must be > 0");
  }
  TemporalPotential p;
  p.kind = PotentialKind::kHarmonic;
  p.omega = omega;
  return p;
}

TemporalPotential TemporalPotential::square_well(double half_width,
                                                 double height) {
  if (half_width <= 0.0 || height < 0.0) {
    throw InvalidArgument("TemporalPotential::square_well: bad geometry");
  }
  TemporalPotential p;
  p.kind = PotentialKind::kSquareWell;
  p.half_width = half_width;
  p.height = height;
  return p;
}

TemporalPotential TemporalPotential::free_box() {
  TemporalPotential p;
  p.kind = PotentialKind::kFreeBox;
  return p;
}

TemporalGrid default_grid(double temporal_inertia, double omega,
                          Eigen::Index n_points) {
  if (temporal_inertia <= 0.0 || omega <= 0.0) {
    throw InvalidArgument("default_grid: scales must be positive");
  }
  const double half_width = 12.0 / std::sqrt(temporal_inertia * omega);
  return TemporalGrid{-half_width, half_width, n_points};
}

std::vector<TemporalEigenpair> solve_temporal_eigenproblem(
    const TemporalModel& model, int n_states) {
  require_valid_grid(model.grid, "solve_temporal_eigenproblem");
  if (model.temporal_inertia <= 0.0) {
    throw InvalidArgument(
        "solve_temporal_eigenproblem: temporal inertia must be > 0");
  }
  if (n_states < 1) {
    throw InvalidArgument("solve_temporal_eigenproblem: n_states must be >= 1");
  }
  const Eigen::Index n = model.grid.n_points;
  if (Eigen::Index(n_states) > n / 4) {
    throw GridTooCoarse("solve_temporal_eigenproblem: " +
                        std::to_string(n_states) + " states on " +
                        std::to_string(n) + " points (need n_points >= 4*states)");
  }

  const double h = model.grid.spacing();
  const double kinetic = 1.0 / (model.temporal_inertia * h * h);

  // Second-order central differences with Dirichlet walls give a real
  // symmetric tridiagonal matrix; dstevr extracts just the lowest states.
  std::vector<double> diag(static_cast<std::size_t>(n));
  std::vector<double> offdiag(std::size_t(n > 1 ? n - 1 : 1), -0.5 * kinetic);
  for (Eigen::Index i = 0; i < n; ++i) {
    diag[std::size_t(i)] =
        kinetic +
        model.potential.value(model.grid.point(i), model.temporal_inertia);
  }

  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(std::size_t(n) * std::size_t(n_states));
  std::vector<lapack_int> isuppz(2 * std::size_t(n_states));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', lapack_int(n), diag.data(), offdiag.data(),
      0.0, 0.0, 1, lapack_int(n_states), 0.0, &found, w.data(), z.data(),
      lapack_int(n), isuppz.data());
  if (info != 0 || found < n_states) {
    throw NonConvergence("solve_temporal_eigenproblem: dstevr info=" +
                         std::to_string(info) + ", states found=" +
                         std::to_string(found));
  }

  std::vector<TemporalEigenpair> out;
  out.reserve(std::size_t(n_states));
  const double scale = 1.0 / std::sqrt(h);  // unit 2-norm -> unit grid norm
  for (int k = 0; k < n_states; ++k) {
    TemporalEigenpair pair;
    pair.lambda_index = k;
    pair.epsilon_t = 0.5 * model.temporal_inertia - w[std::size_t(k)];
    pair.f.grid = model.grid;
    pair.f.values.resize(n);

    const double* col = z.data() + std::size_t(k) * std::size_t(n);
    // Sign convention: leftmost sample reaching a tenth of the peak is
    // positive. Anchoring on the global peak would tie between mirror
    // lobes of odd states and flip with solver rounding.
    double peak = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      peak = std::max(peak, std::abs(col[i]));
    }
    Eigen::Index anchor = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col[i]) >= 0.1 * peak) {
        anchor = i;
        break;
      }
    }
    const double sign = col[anchor] < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      pair.f.values(i) = sign * scale * col[i];
    }
    out.push_back(std::move(pair));
  }
  return out;
}

double time_expectation(const TemporalGridFunction& f) {
  require_valid_grid(f.grid, "time_expectation");
  require_normalized(f, "time_expectation");
  const double h = f.grid.spacing();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    acc += f.grid.point(i) * std::norm(f.values(i));
  }
  return h * acc;
}

double time_variance(const TemporalGridFunction& f) {
  const double mean = time_expectation(f);
  const double h = f.grid.spacing();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    const double d = f.grid.point(i) - mean;
    acc += d * d * std::norm(f.values(i));
  }
  return std::max(0.0, h * acc);
}

double temporal_momentum_expectation(const TemporalGridFunction& f,
                                     double temporal_inertia) {
  require_valid_grid(f.grid, "temporal_momentum_expectation");
  require_normalized(f, "temporal_momentum_expectation");
  // The carrier contributes exactly m_T; the envelope adds
  // <f| i d/dt |f> via central differences (Dirichlet ghosts).
  const Eigen::Index n = f.values.size();
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> right = i + 1 < n ? f.values(i + 1) : 0.0;
    const std::complex<double> left = i > 0 ? f.values(i - 1) : 0.0;
    acc += std::conj(f.values(i)) * (right - left);
  }
  const std::complex<double> deriv_term =
      std::complex<double>(0.0, 0.5) * acc;  // h * i/(2h) * sum
  return temporal_inertia + deriv_term.real();
}

TemporalGridFunction shift(const TemporalGridFunction& f, double xi) {
  require_valid_grid(f.grid, "shift");
  if (std::abs(xi) >= 0.25 * f.grid.span()) {
    throw ShiftTooLarge("shift: |xi|=" + std::to_string(std::abs(xi)) +
                        " exceeds a quarter of the grid span");
  }
  if (xi == 0.0) {
    return f;
  }
  const Eigen::Index n = f.values.size();
  const double h = f.grid.spacing();
  TemporalGridFunction out;
  out.grid = f.grid;
  out.values.setZero(n);

  // Sample f at t_i - xi with a 4-point Lagrange stencil around the
  // bracketing interval; stencil points beyond the walls read as zero.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = (f.grid.point(i) - xi - f.grid.point(0)) / h;
    const double jf = std::floor(x);
    const Eigen::Index j = Eigen::Index(jf);
    const double th = x - jf;
    if (j < -2 || j > n) continue;  // entire stencil outside support

    const double wm1 = -th * (th - 1.0) * (th - 2.0) / 6.0;
    const double w0 = (th * th - 1.0) * (th - 2.0) / 2.0;
    const double w1 = -th * (th + 1.0) * (th - 2.0) / 2.0;
    const double w2 = th * (th * th - 1.0) / 6.0;

    std::complex<double> v = 0.0;
    if (j - 1 >= 0 && j - 1 < n) v += wm1 * f.values(j - 1);
    if (j >= 0 && j < n) v += w0 * f.values(j);
    if (j + 1 >= 0 && j + 1 < n) v += w1 * f.values(j + 1);
    if (j + 2 >= 0 && j + 2 < n) v += w2 * f.values(j + 2);
    out.values(i) = v;
  }
  return out;
}

std::complex<double> chi_overlap(const TemporalGridFunction& f_a,
                                 const TemporalGridFunction& f_b, double xi,
                                 double temporal_inertia) {
  if (!f_a.grid.same_as(f_b.grid)) {
    throw GridMismatch("chi_overlap: operands on different grids");
  }
  require_normalized(f_a, "chi_overlap");
  require_normalized(f_b, "chi_overlap");
  const TemporalGridFunction moved = shift(f_a, xi);
  const std::complex<double> envelope =
      f_a.grid.spacing() * (moved.values.adjoint() * f_b.values)(0);
  // The carrier waves contribute a pure translation phase.
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, -temporal_inertia * xi));
  return phase * envelope;
}

}  // namespace pevclock
