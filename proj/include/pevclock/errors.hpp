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

#ifndef PEVCLOCK_ERRORS_HPP_
#define PEVCLOCK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pevclock {

// Root of the library's exception hierarchy. Every failure the library
// raises deliberately derives from this, so callers can distinguish
// pevclock errors from std:: failures with a single catch clause.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on an argument was violated (bad range, bad size, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operands live in different bases or have incompatible dimensions.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

// A projection hit a state with (numerically) zero overlap; the
// conditional update is undefined.
class ZeroProjection : public Error {
 public:
  using Error::Error;
};

// A matrix that must be unitary is not, beyond tolerance.
class NonUnitary : public Error {
 public:
  using Error::Error;
};

// Dense eigensolver failed to converge or returned a nonsense result.
class EigenFailure : public Error {
 public:
  using Error::Error;
};

// Iterative / LAPACK eigensolve did not converge.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Requested more eigenstates than the grid can resolve.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

// Two grid functions that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

// A grid function that must be normalized is not.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

// A shift would move support too close to the grid boundary.
class ShiftTooLarge : public Error {
 public:
  using Error::Error;
};

// Scalar argument outside the mathematical domain of a closed form.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A sampled branch has zero probability; the conditional state is undefined.
class ZeroBranch : public Error {
 public:
  using Error::Error;
};

// A requested spectral label does not exist in the truncated model.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

// Configuration file / option error. Carries a field-level message of the
// form "file:line: message" where location is known.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Insufficient data to run a statistical comparison.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace pevclock

#endif  // PEVCLOCK_ERRORS_HPP_
