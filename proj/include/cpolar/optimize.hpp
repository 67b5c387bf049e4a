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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpolar/constants.hpp"
#include "cpolar/polarize.hpp"
#include "cpolar/poly.hpp"

namespace cpolar {

// Lower bounds for sup-norms of polynomials and their polarizations on l_p
// spheres. Every reported value is the objective evaluated at a stored
// feasible witness, so it is a true lower bound regardless of how well the
// optimizer converged.

struct OptimConfig {
  int starts = 200;
  int max_iters = 500;
  /// Stop a start once the relative objective improvement falls below tol.
  double tol = 1e-10;
  std::uint64_t seed = 0;
  /// Worker threads for independent starts. The result does not depend on
  /// this value.
  int threads = 1;
  /// Answer degree-2 requests on l_2 with the spectral oracle.
  bool spectral_shortcut = true;

  void validate() const;
};

enum class EstimateKind { Poly, Multilinear, Blocked };

std::string to_string(EstimateKind k);

struct NormEstimate {
  double value = 0.0;
  EstimateKind kind = EstimateKind::Poly;
  /// Poly: one block (x, k). Multilinear: k blocks of multiplicity one.
  /// Blocked: one block per part. Every vector is a unit vector.
  BlockTuple witness;
  int converged_starts = 0;
  OptimConfig config;
  /// "multistart", "spectral" or "constant".
  std::string method;
};

nlohmann::json to_json(const NormEstimate& e);

/// |P^v(witness)| / prod ||x_i||^{k_i}, the quantity every estimate certifies.
double certificate_value(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                         const BlockTuple& witness);

/// Lower bound on sup_{||x|| = 1} |P(x)|. `seeds` are extra starting points
/// tried right after the all-ones start.
NormEstimate estimate_poly_norm(const HomogeneousPolynomial& P,
                                const SpaceSpec& spec, const OptimConfig& cfg,
                                const std::vector<Vector>& seeds = {});

/// Lower bound on the norm of the symmetric k-linear form. Without explicit
/// seeds the diagonal of a poly-norm witness is used as start 1.
NormEstimate estimate_multilinear_norm(
    const HomogeneousPolynomial& P, const SpaceSpec& spec,
    const OptimConfig& cfg,
    const std::optional<std::vector<BlockTuple>>& seeds = std::nullopt);

/// Lower bound on sup |P^v(x_1^{k_1}, ..., x_n^{k_n})| over unit vectors.
NormEstimate estimate_blocked_norm(
    const HomogeneousPolynomial& P, const Partition& parts,
    const SpaceSpec& spec, const OptimConfig& cfg,
    const std::optional<std::vector<BlockTuple>>& seeds = std::nullopt);

/// Unit vector x with |P(x)| = sigma_max of the symmetric coefficient
/// matrix, together with sigma_max.
struct SpectralResult {
  double sigma = 0.0;
  Vector witness;
  int iterations = 0;
};

/// Largest singular value of the symmetric coefficient matrix of a quadratic
/// form, by power iteration on A^H A. Equals both ||P|| and ||P^v|| on l_2^n.
SpectralResult spectral_quadratic(const HomogeneousPolynomial& P);
double spectral_norm_quadratic(const HomogeneousPolynomial& P, int n);

/// A_ii = c_{2e_i}, A_ij = A_ji = c_{e_i+e_j} / 2.
Matrix quadratic_coefficient_matrix(const HomogeneousPolynomial& P);

struct RatioReport {
  NormEstimate poly;
  NormEstimate multilinear;
  double denominator = 0.0;
  double ratio = 0.0;
  /// True only when the denominator is an exact (or certified upper) value
  /// of ||P||, making the ratio a lower bound for c(k, X).
  bool rigorous = false;
};

RatioReport estimate_ratio(const HomogeneousPolynomial& P,
                           const SpaceSpec& spec, const OptimConfig& cfg,
                           std::optional<double> exact_denominator = {});

nlohmann::json to_json(const RatioReport& r);

struct BochnakReport {
  NormEstimate real_norm;
  NormEstimate complex_norm;
  double ratio = 0.0;
};

/// ||P~|| / ||P|| estimated on the complexification of a real l_p space.
BochnakReport estimate_bochnak_ratio(const HomogeneousPolynomial& P,
                                     const SpaceSpec& spec,
                                     const OptimConfig& cfg);

nlohmann::json to_json(const BochnakReport& r);

/// Repeats each block's vector according to its multiplicity.
BlockTuple expand_to_multilinear(const BlockTuple& bt);

/// Outcome of one local ascent of |P| on the unit sphere.
struct Ascent {
  Vector x;
  double value = 0.0;  // |P(x)|, x unit
  bool converged = false;
  int iterations = 0;
};

/// Monotone local ascent of |P(x)| / ||x||^k from x0. Uses scale-invariant
/// gradient steps for 1 < p < inf and projected steps on the ball for
/// p in {1, inf}.
Ascent ascend_poly(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                   const Vector& x0, int max_iters, double tol);

}  // namespace cpolar
