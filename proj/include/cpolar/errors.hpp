// Copyright 2026 The cpolar Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace cpolar {

/// Malformed or mismatched arguments (dimension, degree, shape, range).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument is well-formed but degenerate (zero vector, zero polynomial).
class DegenerateInputError : public std::domain_error {
 public:
  explicit DegenerateInputError(const std::string& what)
      : std::domain_error(what) {}
};

/// Request exceeds a documented computational budget.
class CostError : public std::length_error {
 public:
  explicit CostError(const std::string& what) : std::length_error(what) {}
};

/// Request is outside the supported configuration space.
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::runtime_error(what) {}
};

/// An iterative procedure ran out of steps.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

}  // namespace cpolar
