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

#include <cmath>
#include <random>

#include "cpolar/errors.hpp"
#include "cpolar/spaces.hpp"
#include "doctest.h"

using namespace cpolar;
using C = std::complex<double>;

namespace {

Vector vec(std::initializer_list<C> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const C& x : xs) v[i++] = x;
  return v;
}

SpaceSpec space(int n, const char* p, Field f = Field::Complex) {
  return SpaceSpec(n, Exponent::parse(p), f);
}

// Reference p-norm written out from the definition.
double ref_norm(const Vector& x, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

TEST_CASE("exponent parsing and conjugates") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("2").is_two());
  CHECK(Exponent::parse("1").conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate().is_one());
  CHECK(Exponent::parse("3").conjugate().value() == doctest::Approx(1.5));
  CHECK(Exponent::parse("inf").reciprocal() == 0.0);
  CHECK_THROWS_AS(Exponent::parse("0.5"), InputError);
  CHECK_THROWS_AS(Exponent::parse("abc"), InputError);
  CHECK_THROWS_AS(Exponent::finite(std::nan("")), InputError);
  CHECK_THROWS_AS(SpaceSpec(0, Exponent::finite(2), Field::Real), InputError);
  CHECK(field_from_string("real") == Field::Real);
  CHECK_THROWS_AS(field_from_string("quaternion"), InputError);
}

TEST_CASE("space spec json round trip") {
  for (const char* p : {"1", "2.5", "inf"}) {
    const SpaceSpec s = space(3, p, Field::Real);
    nlohmann::json j;
    to_json(j, s);
    CHECK(space_from_json(j) == s);
  }
}

TEST_CASE("norm examples") {
  for (const char* p : {"1", "2", "3", "inf"})
    CHECK(norm(vec({1, 0, 0}), space(3, p)) == doctest::Approx(1.0));
  CHECK(norm(vec({1, 1}), space(2, "1")) == doctest::Approx(2.0));
  CHECK(norm(vec({0.5, C(0, 0.5)}), space(2, "1")) == doctest::Approx(1.0));
  CHECK(norm(vec({3, C(0, -4)}), space(2, "inf")) == doctest::Approx(4.0));
  CHECK_THROWS_AS(norm(vec({1, 2}), space(3, "2")), InputError);
}

TEST_CASE("norm matches the definition and is absolutely homogeneous") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    const SpaceSpec s(4, Exponent::finite(p), Field::Complex);
    for (int t = 0; t < 50; ++t) {
      Vector x(4);
      for (int j = 0; j < 4; ++j) x[j] = C(g(rng), g(rng));
      CHECK(norm(x, s) == doctest::Approx(ref_norm(x, p)).epsilon(1e-13));
      const C lam(g(rng), g(rng));
      CHECK(norm(lam * x, s) ==
            doctest::Approx(std::abs(lam) * norm(x, s)).epsilon(1e-13));
    }
  }
}

TEST_CASE("norm does not overflow for huge entries") {
  const Vector x = vec({1e200, 1e200});
  CHECK(norm(x, space(2, "2")) == doctest::Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("project_to_sphere") {
  CHECK((project_to_sphere(vec({2, 0}), space(2, "2")) - vec({1, 0})).norm() < 1e-15);
  CHECK((project_to_sphere(vec({1, 1}), space(2, "1")) - vec({0.5, 0.5})).norm() < 1e-15);
  CHECK((project_to_sphere(vec({3, 4}), space(2, "2")) - vec({0.6, 0.8})).norm() < 1e-15);
  CHECK_THROWS_AS(project_to_sphere(vec({0, 0}), space(2, "2")), DegenerateInputError);
}

TEST_CASE("dual_align examples") {
  const Vector a = dual_align(vec({1, 0}), space(2, "2"));
  CHECK((a - vec({1, 0})).norm() < 1e-15);
  const Vector b = dual_align(vec({3, 4}), space(2, "inf"));
  CHECK((b - vec({1, 1})).norm() < 1e-15);
  CHECK(pairing(vec({3, 4}), b).real() == doctest::Approx(7.0));
  const Vector c = dual_align(vec({1, C(0, 1)}), space(2, "inf"));
  CHECK((c - vec({1, C(0, -1)})).norm() < 1e-15);
  CHECK(pairing(vec({1, C(0, 1)}), c).real() == doctest::Approx(2.0));
  // Zero entries get phase one on l_inf.
  CHECK((dual_align(vec({0, 2}), space(2, "inf")) - vec({1, 1})).norm() < 1e-15);
  CHECK_THROWS_AS(dual_align(vec({0, 0}), space(2, "2")), DegenerateInputError);
}

TEST_CASE("dual_align attains the dual norm and beats random unit vectors") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const char* p : {"1", "1.5", "2", "4", "inf"}) {
    for (Field f : {Field::Real, Field::Complex}) {
      const SpaceSpec s = space(3, p, f);
      Vector phi(3);
      for (int j = 0; j < 3; ++j)
        phi[j] = C(g(rng), f == Field::Complex ? g(rng) : 0.0);
      const Vector x = dual_align(phi, s);
      CHECK(norm(x, s) == doctest::Approx(1.0).epsilon(1e-12));
      const C v = pairing(phi, x);
      CHECK(v.real() == doctest::Approx(dual_norm(phi, s)).epsilon(1e-12));
      CHECK(std::abs(v.imag()) < 1e-12 * dual_norm(phi, s));
      if (f == Field::Real) CHECK(x.imag().norm() == 0.0);
      double best_random = 0.0;
      for (int t = 0; t < 10000; ++t) {
        const Vector y = random_unit_vector(s, rng);
        best_random = std::max(best_random, pairing(phi, y).real());
      }
      CHECK(best_random <= v.real() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("random unit vectors live on the sphere and respect the field") {
  std::mt19937_64 rng(3);
  for (const char* p : {"1", "2", "5", "inf"}) {
    const SpaceSpec s = space(2, p, Field::Real);
    for (int t = 0; t < 20; ++t) {
      const Vector x = random_unit_vector(s, rng);
      CHECK(norm(x, s) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(x.imag().norm() == 0.0);
    }
  }
  CHECK_THROWS_AS(check_vector(vec({C(0, 1)}), space(1, "2", Field::Real)), InputError);
  CHECK_THROWS_AS(basis_vector(2, 2), InputError);
}
