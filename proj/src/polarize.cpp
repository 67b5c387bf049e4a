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

#include "cpolar/polarize.hpp"

#include <cmath>

namespace cpolar {

double log_factorial(int n) {
  if (n < 0) throw InputError("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

BlockTuple::BlockTuple(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const Block& b : blocks_) {
    if (b.multiplicity < 1)
      throw InputError("block multiplicity must be positive");
    if (b.vector.size() != blocks_.front().vector.size())
      throw InputError("block vectors must share one dimension");
    total_ += b.multiplicity;
  }
}

BlockTuple BlockTuple::from_vectors(const std::vector<Vector>& args) {
  std::vector<Block> blocks;
  blocks.reserve(args.size());
  for (const Vector& v : args) blocks.push_back({v, 1});
  return BlockTuple(std::move(blocks));
}

int BlockTuple::dim() const {
  return blocks_.empty() ? 0 : static_cast<int>(blocks_.front().vector.size());
}

Scalar polarize_sign_sum(const HomogeneousPolynomial& P,
                         const std::vector<Vector>& args) {
  const int k = P.degree();
  if (k < 1) throw InputError("polarize_sign_sum: degree must be >= 1");
  if (k > kMaxSignSumDegree)
    throw CostError("polarize_sign_sum: 2^" + std::to_string(k) +
                    " terms exceeds the budget of 2^" +
                    std::to_string(kMaxSignSumDegree));
  if (static_cast<int>(args.size()) != k)
    throw InputError("polarize_sign_sum: expected " + std::to_string(k) +
                     " arguments, got " + std::to_string(args.size()));
  for (const Vector& a : args)
    if (a.size() != P.dim())
      throw InputError("polarize_sign_sum: argument dimension mismatch");

  const std::uint64_t patterns = std::uint64_t{1} << k;
  Scalar sum(0.0, 0.0);
  Vector point(P.dim());
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    point.setZero();
    int negatives = 0;
    for (int i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        point -= args[i];
        ++negatives;
      } else {
        point += args[i];
      }
    }
    const Scalar v = evaluate(P, point);
    sum += (negatives % 2 == 0) ? v : -v;
  }
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return sum / std::ldexp(factorial, k);
}

namespace {

Matrix block_matrix(const BlockTuple& bt) {
  Matrix M(bt.dim(), static_cast<Eigen::Index>(bt.size()));
  for (std::size_t i = 0; i < bt.size(); ++i)
    M.col(static_cast<Eigen::Index>(i)) = bt[i].vector;
  return M;
}

}  // namespace

Scalar polarize_blocked(const HomogeneousPolynomial& P, const BlockTuple& bt) {
  if (bt.total() != P.degree())
    throw InputError("polarize_blocked: multiplicities sum to " +
                     std::to_string(bt.total()) + ", degree is " +
                     std::to_string(P.degree()));
  if (bt.size() == 0) return P.coefficient(MultiIndex(P.dim(), 0));
  if (bt.dim() != P.dim())
    throw InputError("polarize_blocked: vector dimension mismatch");

  const HomogeneousPolynomial Q = compose_linear(P, block_matrix(bt));
  MultiIndex kappa;
  double log_scale = -log_factorial(P.degree());
  for (const Block& b : bt.blocks()) {
    kappa.push_back(b.multiplicity);
    log_scale += log_factorial(b.multiplicity);
  }
  return std::exp(log_scale) * Q.coefficient(kappa);
}

Scalar derivative_pairing(const HomogeneousPolynomial& P, const Vector& x1,
                          const Vector& x2, int j) {
  const int k = P.degree();
  if (j < 0 || j > k)
    throw InputError("derivative_pairing: j must lie in [0, " +
                     std::to_string(k) + "]");
  std::vector<Block> blocks;
  if (k - j > 0) blocks.push_back({x1, k - j});
  if (j > 0) blocks.push_back({x2, j});
  const double binom =
      std::round(std::exp(log_factorial(k) - log_factorial(j) -
                          log_factorial(k - j)));
  return binom * polarize_blocked(P, BlockTuple(std::move(blocks)));
}

HomogeneousPolynomial slot_polynomial(const HomogeneousPolynomial& P,
                                      const BlockTuple& bt, std::size_t slot) {
  if (slot >= bt.size()) throw InputError("slot_polynomial: slot out of range");
  if (bt.total() != P.degree())
    throw InputError("slot_polynomial: multiplicities do not sum to degree");
  if (bt.dim() != P.dim())
    throw InputError("slot_polynomial: vector dimension mismatch");

  const int n = P.dim();
  const int fixed = static_cast<int>(bt.size()) - 1;
  Matrix M(n, fixed + n);
  MultiIndex kappa;
  double log_scale = -log_factorial(P.degree());
  int col = 0;
  for (std::size_t i = 0; i < bt.size(); ++i) {
    log_scale += log_factorial(bt[i].multiplicity);
    if (i == slot) continue;
    M.col(col++) = bt[i].vector;
    kappa.push_back(bt[i].multiplicity);
  }
  M.rightCols(n) = Matrix::Identity(n, n);
  const double scale = std::exp(log_scale);

  // Coefficient of t^kappa y^alpha, rescaled, is the y^alpha coefficient.
  const HomogeneousPolynomial Q = compose_linear(P, M);
  TermMap terms;
  for (const auto& [beta, c] : Q.terms()) {
    if (!std::equal(kappa.begin(), kappa.end(), beta.begin())) continue;
    terms[MultiIndex(beta.begin() + fixed, beta.end())] = scale * c;
  }
  return HomogeneousPolynomial(bt[slot].multiplicity, n, Q.field(),
                               std::move(terms));
}

}  // namespace cpolar
