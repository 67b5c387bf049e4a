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

#include <vector>

#include "cpolar/poly.hpp"

namespace cpolar {

// Evaluation of the symmetric k-linear form associated with a homogeneous
// polynomial. The sign-sum evaluator is exponential in k and serves as an
// oracle; the blocked evaluator extracts one coefficient of
// P(t_1 x_1 + ... + t_n x_n) and is the production path.

struct Block {
  Vector vector;
  int multiplicity;
};

/// Arguments (x_1^{k_1}, ..., x_n^{k_n}) of a symmetric multilinear form.
class BlockTuple {
 public:
  BlockTuple() = default;
  explicit BlockTuple(std::vector<Block> blocks);

  /// k arguments, each with multiplicity one.
  static BlockTuple from_vectors(const std::vector<Vector>& args);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  int total() const { return total_; }
  /// Common vector length; 0 when empty.
  int dim() const;

  Block& operator[](std::size_t i) { return blocks_[i]; }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

 private:
  std::vector<Block> blocks_;
  int total_ = 0;
};

/// Largest degree accepted by polarize_sign_sum.
inline constexpr int kMaxSignSumDegree = 24;

/// (1/(k! 2^k)) sum over sign patterns of eps_1...eps_k P(sum eps_i x_i).
Scalar polarize_sign_sum(const HomogeneousPolynomial& P,
                         const std::vector<Vector>& args);

/// P^v(x_1^{k_1}, ..., x_n^{k_n}) by coefficient extraction.
Scalar polarize_blocked(const HomogeneousPolynomial& P, const BlockTuple& bt);

/// C(k,j) P^v(x1^{k-j}, x2^j).
Scalar derivative_pairing(const HomogeneousPolynomial& P, const Vector& x1,
                          const Vector& x2, int j);

/// The k_s-homogeneous polynomial y -> P^v(..., y^{k_s}, ...) obtained by
/// freezing every block except `slot`. The vector stored at `slot` is
/// ignored.
HomogeneousPolynomial slot_polynomial(const HomogeneousPolynomial& P,
                                      const BlockTuple& bt, std::size_t slot);

/// log(n!) via lgamma.
double log_factorial(int n);

}  // namespace cpolar
