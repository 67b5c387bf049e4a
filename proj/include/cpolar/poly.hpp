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
#include <map>
#include <string>
#include <vector>

#include "cpolar/errors.hpp"
#include "cpolar/spaces.hpp"
#include "json.hpp"

namespace cpolar {

/// Exponent vector alpha = (alpha_1, ..., alpha_n).
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

/// Canonical monomial order: lexicographic descending on exponents, so
/// iteration visits z1^2, z1 z2, z2^2.
struct LexDescending {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return b < a;
  }
};

using TermMap = std::map<MultiIndex, Scalar, LexDescending>;

/// All multi-indices of total degree k in n variables, canonical order.
std::vector<MultiIndex> multi_indices(int k, int n);

/// Degree-k homogeneous polynomial in n variables, stored sparsely.
///
/// Invariants enforced at construction: every key has length n and total
/// degree k, no exact-zero coefficient is stored, and a real polynomial has
/// no imaginary parts.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int degree, int dim, Field field, TermMap terms = {});

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  Field field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// c_alpha, zero when absent.
  Scalar coefficient(const MultiIndex& alpha) const;

  /// Largest coefficient modulus.
  double max_abs_coefficient() const;

 private:
  int degree_;
  int dim_;
  Field field_;
  TermMap terms_;
};

/// Drops |c| < rel * max|c|; used after floating-point arithmetic.
void prune_terms(TermMap& terms, double rel = 1e-15);

Scalar evaluate(const HomogeneousPolynomial& P, const Vector& x);

/// Formal gradient; entry j is dP/dz_j. Zero vector for degree 0.
Vector gradient(const HomogeneousPolynomial& P, const Vector& x);

/// Q(z) = P(M z) for an n x m matrix M; Q has m variables.
HomogeneousPolynomial compose_linear(const HomogeneousPolynomial& P,
                                     const Matrix& M);

/// Pointwise product; degrees add.
HomogeneousPolynomial product(const HomogeneousPolynomial& P,
                              const HomogeneousPolynomial& Q);

/// Same coefficients, complex field.
HomogeneousPolynomial complexify(const HomogeneousPolynomial& P);

/// (xy)^{2m} sum_{j=0}^{2m} C(4m,2j) (-1)^j y^{2j} x^{4m-2j}, degree 8m,
/// a real polynomial whose norm on real l_1^2 is 2^{-6m}.
HomogeneousPolynomial real_l1_example(int m);

/// z1^2 + z2^2 + z3^2 - 2 z1 z2 - 2 z1 z3 - 2 z2 z3 over C.
HomogeneousPolynomial varopoulos();

/// Dense polynomial with i.i.d. N(0,1) coefficients (independent real and
/// imaginary parts when complex); deterministic in seed.
HomogeneousPolynomial random_polynomial(int k, int n, Field field,
                                        std::uint64_t seed);

/// The single term c z^alpha.
HomogeneousPolynomial monomial(const MultiIndex& alpha, Field field,
                               Scalar c = 1.0);

/// Raised when a polynomial document is malformed. line() is 1-based and 0
/// when no anchor is known.
class PolynomialParseError : public InputError {
 public:
  PolynomialParseError(const std::string& what, int line)
      : InputError(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

nlohmann::json to_json(const HomogeneousPolynomial& P);
HomogeneousPolynomial polynomial_from_json(const nlohmann::json& j);
/// Parses a polynomial document, anchoring errors to source lines.
HomogeneousPolynomial parse_polynomial(const std::string& text);
HomogeneousPolynomial load_polynomial(const std::string& path);

}  // namespace cpolar
