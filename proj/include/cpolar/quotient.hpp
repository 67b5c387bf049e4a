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
#include <utility>
#include <vector>

#include "cpolar/constants.hpp"
#include "cpolar/optimize.hpp"
#include "cpolar/poly.hpp"
#include "cpolar/spaces.hpp"

namespace cpolar {

// Every finite-dimensional l_p space is almost a quotient of some l_1^d:
// with an eta-net {h_j} of the unit sphere, q(e_j) = h_j has norm at most
// one and every x lifts to z with ||z||_1 < ||x|| / (1 - eta).

/// Real dimension budget for net construction.
inline constexpr int kMaxRealNetDim = 3;
inline constexpr int kMaxComplexNetDim = 2;
inline constexpr int kNetSamples = 100000;

/// Farthest-point net of the unit sphere; coverage is re-verified on a fresh
/// sample before returning.
std::vector<Vector> build_eta_net(const SpaceSpec& spec, double eta,
                                  std::uint64_t seed);

/// Largest distance from a seeded sample of unit vectors to the net.
double covering_radius(const SpaceSpec& spec, const std::vector<Vector>& net,
                       int samples, std::uint64_t seed);

/// Deterministic angular grid on the unit sphere of spec.
std::vector<Vector> sphere_grid(const SpaceSpec& spec);

/// Sparse element of l_1^d as (index, coefficient) pairs, sorted by index.
struct SparseL1 {
  std::vector<std::pair<int, Scalar>> entries;

  double l1_norm() const;
  Vector dense(int d) const;
};

struct QuotientMap {
  SpaceSpec target;
  std::vector<Vector> net;
  double eta;
  double epsilon;
  /// target.dim x d, column j is net[j].
  Matrix matrix;

  int d() const { return static_cast<int>(net.size()); }
  Vector apply(const SparseL1& z) const;
  /// Index of the net point nearest to u in the target norm.
  int nearest(const Vector& u) const;
};

QuotientMap build_quotient(const SpaceSpec& spec, double eta, double epsilon,
                           std::uint64_t seed);

struct Preimage {
  SparseL1 z;
  /// norm(x - q(z)).
  double residual = 0.0;
  /// Running residual norms; entry 0 is ||x||.
  std::vector<double> history;
  int steps = 0;
  /// history[j] < eta^j ||x|| for every step.
  bool geometric_decay = true;
};

Preimage greedy_preimage(const QuotientMap& Q, const Vector& x,
                         double residual_tol = 1e-12, int max_steps = 200);

struct TransferReport {
  int k = 0;
  int d = 0;
  int samples = 0;
  int violations = 0;
  double poly_norm = 0.0;
  ExactRational c_l1;
  /// (1+eps)^k c(k, l_1^d) ||P||.
  double bound = 0.0;
  /// max |P^v(x_1..x_k)| / bound.
  double max_slack = 0.0;
  double max_l1_ratio = 0.0;
  double max_residual = 0.0;
  /// max |(P o q)^v(z_1..z_k) - P^v(x_1..x_k)| / (1 + |P^v(x)|).
  double max_chain_error = 0.0;
};

inline constexpr int kMaxTransferDegree = 8;

/// Audits |P^v(x_1..x_k)| <= (1+eps)^k c(k, l_1^d) ||P|| on random unit
/// tuples, lifting each x_i through Q and evaluating (P o q)^v on the lifts.
TransferReport verify_transfer_bound(const HomogeneousPolynomial& P,
                                     const QuotientMap& Q,
                                     const OptimConfig& cfg, int samples,
                                     std::uint64_t seed);

}  // namespace cpolar
