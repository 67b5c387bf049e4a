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

// Independent reference implementations used only by the tests. None of
// them shares code paths with the library routine it checks.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Dense>

#include "cpolar/poly.hpp"

namespace oracle {

// Direct product formula with every factorial and power built by repeated
// multiplication.
inline mpq_class composition_value(const std::vector<int>& parts) {
  int k = 0;
  for (int p : parts) k += p;
  mpz_class num = 1, den = 1;
  for (int i = 2; i <= k; ++i) den *= i;
  for (int i = 0; i < k; ++i) num *= k;
  for (int p : parts) {
    for (int i = 2; i <= p; ++i) num *= i;
    for (int i = 0; i < p; ++i) den *= p;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Max over every weak composition of k into d parts, by odometer.
inline mpq_class max_composition_value(int k, int d, long* count = nullptr) {
  std::vector<int> parts(d, 0);
  parts[d - 1] = k;
  mpq_class best = 0;
  long n = 0;
  for (;;) {
    int s = 0;
    for (int i = 0; i + 1 < d; ++i) s += parts[i];
    if (s <= k) {
      parts[d - 1] = k - s;
      ++n;
      const mpq_class v = composition_value(parts);
      if (v > best) best = v;
    }
    int i = 0;
    while (i + 1 < d && parts[i] == k) parts[i++] = 0;
    if (i + 1 >= d) break;
    ++parts[i];
  }
  if (count) *count = n;
  return best;
}

// Term-by-term evaluation using std::pow, no shared power tables.
inline std::complex<double> evaluate(const cpolar::HomogeneousPolynomial& P,
                                     const Eigen::VectorXcd& x) {
  std::complex<double> s = 0.0;
  for (const auto& [alpha, c] : P.terms()) {
    std::complex<double> m = c;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (alpha[j] > 0) m *= std::pow(x[static_cast<Eigen::Index>(j)], alpha[j]);
    s += m;
  }
  return s;
}

// Largest singular value of the symmetric coefficient matrix, by SVD.
inline double spectral_norm(const cpolar::HomogeneousPolynomial& P) {
  const int n = P.dim();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [alpha, c] : P.terms()) {
    int a = -1, b = -1;
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < alpha[j]; ++r) (a < 0 ? a : b) = j;
    if (a == b) {
      A(a, a) += c;
    } else {
      A(a, b) += c / 2.0;
      A(b, a) += c / 2.0;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0);
}

// Coefficient of t^j in P(x1 + t x2) by a discrete Fourier transform over
// k+1 roots of unity.
inline std::complex<double> taylor_coefficient(const cpolar::HomogeneousPolynomial& P,
                                               const Eigen::VectorXcd& x1,
                                               const Eigen::VectorXcd& x2, int j) {
  const int k = P.degree();
  const int N = k + 1;
  std::complex<double> s = 0.0;
  for (int r = 0; r < N; ++r) {
    const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi * r / N);
    const Eigen::VectorXcd y = x1 + w * x2;
    s += oracle::evaluate(P, y) * std::pow(std::conj(w), j);
  }
  return s / static_cast<double>(N);
}

}  // namespace oracle
