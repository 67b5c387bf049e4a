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

#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

namespace cpolar {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

enum class Field { Real, Complex };

std::string to_string(Field f);
Field field_from_string(const std::string& s);

/// Extended real exponent in [1, inf]. Infinity is its own case, never a
/// large double.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(0.0, true); }
  /// Accepts "inf", "infinity" or a decimal number >= 1.
  static Exponent parse(const std::string& s);

  bool is_infinite() const { return infinite_; }
  bool is_one() const { return !infinite_ && value_ == 1.0; }
  bool is_two() const { return !infinite_ && value_ == 2.0; }
  /// Finite value; throws InputError on infinity.
  double value() const;
  /// Conjugate exponent p' with 1/p + 1/p' = 1.
  Exponent conjugate() const;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// The space l_p^n over R or C.
struct SpaceSpec {
  int dim;
  Exponent p;
  Field field;

  SpaceSpec(int dim, Exponent p, Field field);

  /// Same dim and exponent over the other field.
  SpaceSpec with_field(Field f) const { return SpaceSpec(dim, p, f); }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

void to_json(nlohmann::json& j, const SpaceSpec& s);
SpaceSpec space_from_json(const nlohmann::json& j);

/// Unit phase of z, with phase(0) := 1.
Scalar unit_phase(Scalar z);

/// Unconjugated bilinear pairing sum_j phi_j x_j.
Scalar pairing(const Vector& phi, const Vector& x);

double norm(const Vector& x, const SpaceSpec& spec);
/// Norm in the dual space l_{p'}^n.
double dual_norm(const Vector& phi, const SpaceSpec& spec);

Vector project_to_sphere(const Vector& x, const SpaceSpec& spec);

/// Unit vector x maximizing Re <phi, x>; the maximum equals dual_norm(phi).
/// For p = 1 ties go to the smallest index.
Vector dual_align(const Vector& phi, const SpaceSpec& spec);

/// Gaussian direction projected to the unit sphere; real entries for real
/// spaces.
Vector random_unit_vector(const SpaceSpec& spec, std::mt19937_64& rng);

/// Throws InputError unless x has spec.dim entries (and is real for a real
/// space).
void check_vector(const Vector& x, const SpaceSpec& spec);

/// Basis vector e_j of length n.
Vector basis_vector(int n, int j);

}  // namespace cpolar
