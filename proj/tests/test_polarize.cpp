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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cpolar/errors.hpp"
#include "cpolar/polarize.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpolar;
using C = std::complex<double>;

namespace {

Vector vec(std::initializer_list<C> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const C& x : xs) v[i++] = x;
  return v;
}

Vector random_vector(int n, std::mt19937_64& rng, bool complex) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector x(n);
  for (int j = 0; j < n; ++j) x[j] = C(g(rng), complex ? g(rng) : 0.0);
  return x;
}

double rel(C a, C b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("sign-sum examples") {
  CHECK(std::abs(polarize_sign_sum(monomial({1, 1}, Field::Real), {vec({1, 0}), vec({0, 1})}) -
                 C(0.5)) < 1e-15);
  for (int k = 1; k <= 6; ++k) {
    MultiIndex a{k, 0};
    std::vector<Vector> args(k, vec({1, 0}));
    CHECK(std::abs(polarize_sign_sum(monomial(a, Field::Real), args) - C(1.0)) < 1e-13);
  }
  const Vector ones = vec({1, 1, 1});
  CHECK(std::abs(polarize_sign_sum(varopoulos(), {ones, ones}) - C(-3.0)) < 1e-13);
}

TEST_CASE("sign-sum budget and shape checks") {
  const auto big = monomial({25}, Field::Real);
  CHECK_THROWS_AS(polarize_sign_sum(big, std::vector<Vector>(25, vec({1}))), CostError);
  CHECK_THROWS_AS(polarize_sign_sum(monomial({1, 1}, Field::Real), {vec({1, 0})}), InputError);
  CHECK_THROWS_AS(polarize_sign_sum(monomial({1, 1}, Field::Real), {vec({1, 0}), vec({1})}),
                  InputError);
}

TEST_CASE("blocked examples") {
  const auto P = monomial({2, 1}, Field::Real);
  const BlockTuple bt({{vec({1, 0}), 2}, {vec({0, 1}), 1}});
  CHECK(std::abs(polarize_blocked(P, bt) - C(1.0 / 3.0)) < 1e-15);

  std::mt19937_64 rng(2);
  const auto Q = random_polynomial(4, 3, Field::Complex, 8);
  const Vector x = random_vector(3, rng, true);
  CHECK(rel(polarize_blocked(Q, BlockTuple({{x, 4}})), evaluate(Q, x)) < 1e-12);

  // Optimally phased unimodular w against u = (1, l, l^2) gives 6.
  const C lam = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Vector u = vec({1, lam, lam * lam});
  const auto V = varopoulos();
  Vector phi(3);
  for (int j = 0; j < 3; ++j) {
    phi[j] = 0.0;
    for (int i = 0; i < 3; ++i) phi[j] += (i == j ? 1.0 : -1.0) * u[i];
  }
  Vector w(3);
  for (int j = 0; j < 3; ++j) w[j] = std::conj(phi[j]) / std::abs(phi[j]);
  CHECK(std::abs(polarize_blocked(V, BlockTuple({{w, 1}, {u, 1}}))) ==
        doctest::Approx(6.0).epsilon(1e-13));

  CHECK_THROWS_AS(polarize_blocked(P, BlockTuple({{vec({1, 0}), 2}})), InputError);
  CHECK_THROWS_AS(BlockTuple({{vec({1, 0}), 0}}), InputError);
  CHECK_THROWS_AS(BlockTuple({{vec({1, 0}), 1}, {vec({1}), 1}}), InputError);
}

TEST_CASE("sign-sum and blocked agree on random instances") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 4);
    const bool cx = t % 2 == 1;
    const auto P = random_polynomial(k, n, cx ? Field::Complex : Field::Real, rng());
    std::vector<Vector> args;
    for (int i = 0; i < k; ++i) args.push_back(random_vector(n, rng, cx));
    const C b = polarize_blocked(P, BlockTuple::from_vectors(args));
    CHECK(rel(polarize_sign_sum(P, args), b) <= 1e-9);
  }
}

TEST_CASE("symmetry and multilinearity") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const int k = 2 + t % 4;
    const auto P = random_polynomial(k, 3, Field::Complex, 900 + t);
    std::vector<Vector> args;
    for (int i = 0; i < k; ++i) args.push_back(random_vector(3, rng, true));
    const C base = polarize_sign_sum(P, args);
    auto perm = args;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(rel(polarize_sign_sum(P, perm), base) <= 1e-10);

    const Vector y = random_vector(3, rng, true);
    const C a(0.3, -1.2), b(2.0, 0.5);
    auto mixed = args, with_y = args;
    mixed[0] = a * args[0] + b * y;
    with_y[0] = y;
    const C lhs = polarize_blocked(P, BlockTuple::from_vectors(mixed));
    const C rhs = a * base + b * polarize_blocked(P, BlockTuple::from_vectors(with_y));
    CHECK(rel(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("coefficient round trip") {
  for (int t = 0; t < 10; ++t) {
    const int k = 1 + t % 5;
    const int n = 1 + t % 3;
    const auto P = random_polynomial(k, n, Field::Complex, 50 + t);
    for (const MultiIndex& alpha : multi_indices(k, n)) {
      std::vector<Block> blocks;
      double afact = 1.0;
      for (int j = 0; j < n; ++j) {
        afact *= factorial(alpha[j]);
        if (alpha[j] > 0) blocks.push_back({basis_vector(n, j), alpha[j]});
      }
      const C c = factorial(k) / afact * polarize_blocked(P, BlockTuple(blocks));
      CHECK(rel(c, P.coefficient(alpha)) <= 1e-10);
    }
  }
}

TEST_CASE("derivative pairing") {
  std::mt19937_64 rng(4);
  const auto P = random_polynomial(5, 3, Field::Complex, 3);
  const Vector x1 = random_vector(3, rng, true), x2 = random_vector(3, rng, true);
  CHECK(rel(derivative_pairing(P, x1, x2, 0), evaluate(P, x1)) < 1e-12);
  CHECK(rel(derivative_pairing(P, x1, x2, 5), evaluate(P, x2)) < 1e-12);
  for (int j = 0; j <= 5; ++j)
    CHECK(rel(derivative_pairing(P, x1, x2, j), oracle::taylor_coefficient(P, x1, x2, j)) <
          1e-11);
  CHECK(derivative_pairing(monomial({2, 0}, Field::Real), vec({1, 0}), vec({0, 1}), 1) ==
        C(0.0));
  CHECK_THROWS_AS(derivative_pairing(P, x1, x2, 6), InputError);
  CHECK_THROWS_AS(derivative_pairing(P, x1, x2, -1), InputError);
}

TEST_CASE("slot polynomial freezes the other blocks") {
  std::mt19937_64 rng(8);
  const auto P = random_polynomial(5, 3, Field::Complex, 21);
  BlockTuple bt({{random_vector(3, rng, true), 2},
                 {random_vector(3, rng, true), 1},
                 {random_vector(3, rng, true), 2}});
  for (std::size_t s = 0; s < bt.size(); ++s) {
    const auto R = slot_polynomial(P, bt, s);
    CHECK(R.degree() == bt[s].multiplicity);
    const Vector y = random_vector(3, rng, true);
    BlockTuple with_y = bt;
    with_y[s].vector = y;
    CHECK(rel(evaluate(R, y), polarize_blocked(P, with_y)) < 1e-11);
  }
  CHECK_THROWS_AS(slot_polynomial(P, bt, 3), InputError);
}
