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
#include "cpolar/optimize.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpolar;
using C = std::complex<double>;

namespace {

SpaceSpec space(int n, const char* p, Field f = Field::Complex) {
  return SpaceSpec(n, Exponent::parse(p), f);
}

OptimConfig quick(int starts = 40) {
  OptimConfig cfg;
  cfg.starts = starts;
  cfg.seed = 12345;
  return cfg;
}

void check_certificate(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                       const NormEstimate& e) {
  for (const Block& b : e.witness.blocks())
    CHECK(norm(b.vector, spec) == doctest::Approx(1.0).epsilon(1e-12));
  const double again = certificate_value(P, spec, e.witness);
  CHECK(std::abs(again - e.value) <= 1e-12 * std::max(1.0, e.value));
}

}  // namespace

TEST_CASE("config validation") {
  OptimConfig cfg;
  cfg.starts = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = OptimConfig{};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  CHECK_THROWS_AS(estimate_poly_norm(varopoulos(), space(3, "2"), cfg), InputError);
}

TEST_CASE("poly norm examples") {
  const auto V = varopoulos();
  const auto e = estimate_poly_norm(V, space(3, "inf"), OptimConfig{});
  CHECK(e.value == doctest::Approx(5.0).epsilon(2e-5));
  CHECK(e.value <= 5.0 + 1e-6);
  CHECK(e.kind == EstimateKind::Poly);
  check_certificate(V, space(3, "inf"), e);

  for (const char* p : {"1", "1.5", "2", "3", "inf"})
    for (Field f : {Field::Real, Field::Complex}) {
      const auto P = monomial({3, 0, 0}, f);
      const auto s = space(3, p, f);
      CHECK(estimate_poly_norm(P, s, quick()).value == doctest::Approx(1.0).epsilon(1e-10));
    }

  const auto R = real_l1_example(1);
  const auto s = space(2, "1", Field::Real);
  const auto r = estimate_poly_norm(R, s, OptimConfig{});
  CHECK(std::abs(r.value - 1.0 / 64.0) < 1e-8);
  check_certificate(R, s, r);
}

TEST_CASE("poly norm of monomials on l_p matches the Lagrange maximum") {
  // max x^a y^b on x^p + y^p = 1 is (a/k)^{a/p} (b/k)^{b/p}.
  for (double p : {1.0, 1.5, 2.0, 3.0, 6.0})
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 2}, {1, 4}}) {
      const int k = a + b;
      const double expect = std::pow(double(a) / k, a / p) * std::pow(double(b) / k, b / p);
      for (Field f : {Field::Real, Field::Complex}) {
        const SpaceSpec s(2, Exponent::finite(p), f);
        const auto e = estimate_poly_norm(monomial({a, b}, f), s, quick());
        CHECK(e.value == doctest::Approx(expect).epsilon(1e-8));
        CHECK(e.value <= expect * (1 + 1e-12));
      }
    }
}

TEST_CASE("positive coefficients on l_inf peak at the all-ones vector") {
  for (int t = 0; t < 5; ++t) {
    auto P = random_polynomial(3, 3, Field::Real, 70 + t);
    TermMap pos;
    double sum = 0.0;
    for (const auto& [alpha, c] : P.terms()) {
      pos[alpha] = std::abs(c.real());
      sum += std::abs(c.real());
    }
    const HomogeneousPolynomial Q(3, 3, Field::Complex, pos);
    CHECK(estimate_poly_norm(Q, space(3, "inf"), quick()).value ==
          doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("degenerate polynomials") {
  const HomogeneousPolynomial c(0, 2, Field::Complex, {{{0, 0}, C(3, 4)}});
  const auto e = estimate_poly_norm(c, space(2, "2"), quick());
  CHECK(e.value == doctest::Approx(5.0));
  CHECK(e.method == "constant");
  const HomogeneousPolynomial z(3, 2, Field::Complex);
  CHECK(estimate_poly_norm(z, space(2, "2"), quick()).value == 0.0);
  CHECK(estimate_multilinear_norm(z, space(2, "2"), quick()).value == 0.0);
  CHECK_THROWS_AS(estimate_ratio(z, space(2, "2"), quick()), DegenerateInputError);
  CHECK_THROWS_AS(estimate_poly_norm(varopoulos(), space(3, "2", Field::Real), quick()),
                  InputError);
  CHECK_THROWS_AS(estimate_poly_norm(varopoulos(), space(2, "2"), quick()), InputError);
}

TEST_CASE("spectral oracle") {
  const HomogeneousPolynomial id(2, 2, Field::Complex, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  CHECK(spectral_norm_quadratic(id, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spectral_norm_quadratic(monomial({1, 1}, Field::Complex), 2) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(spectral_norm_quadratic(varopoulos(), 3) - 2.0) < 1e-10);
  CHECK_THROWS_AS(spectral_norm_quadratic(monomial({3, 0}, Field::Complex), 2), InputError);
  CHECK_THROWS_AS(spectral_norm_quadratic(varopoulos(), 2), InputError);

  for (int t = 0; t < 20; ++t) {
    const Field f = t % 2 ? Field::Complex : Field::Real;
    const auto P = random_polynomial(2, 2 + t % 4, f, 300 + t);
    const auto sr = spectral_quadratic(P);
    const double svd = oracle::spectral_norm(P);
    CHECK(sr.sigma == doctest::Approx(svd).epsilon(1e-12));
    CHECK(sr.witness.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(evaluate(P, sr.witness)) == doctest::Approx(svd).epsilon(1e-10));
    if (f == Field::Real) CHECK(sr.witness.imag().norm() == 0.0);
  }
}

TEST_CASE("Banach: polynomial and multilinear norms coincide on l_2") {
  OptimConfig cfg = quick(8);
  cfg.spectral_shortcut = false;
  for (int t = 0; t < 10; ++t) {
    const auto P = random_polynomial(2, 4, Field::Complex, 700 + t);
    const auto s = space(4, "2");
    const double sigma = oracle::spectral_norm(P);
    const auto poly = estimate_poly_norm(P, s, cfg);
    const auto multi = estimate_multilinear_norm(P, s, cfg);
    CHECK(poly.value == doctest::Approx(sigma).epsilon(1e-6));
    CHECK(multi.value == doctest::Approx(sigma).epsilon(1e-6));
    CHECK(poly.method == "multistart");
    check_certificate(P, s, poly);
    check_certificate(P, s, multi);
  }
  const auto e = estimate_multilinear_norm(monomial({1, 1}, Field::Complex), space(2, "2"), cfg);
  CHECK(std::abs(e.value - 0.5) < 1e-8);
  const auto sh = estimate_poly_norm(monomial({1, 1}, Field::Complex), space(2, "2"), quick());
  CHECK(sh.method == "spectral");
  CHECK(std::abs(sh.value - 0.5) < 1e-12);
  for (int n : {1, 3, 5})
    CHECK(estimate_multilinear_norm(monomial([n] {
                                      MultiIndex a(n, 0);
                                      a[0] = 2;
                                      return a;
                                    }(),
                                             Field::Complex),
                                    space(n, "2"), cfg)
              .value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("multilinear and blocked estimates") {
  const auto V = varopoulos();
  const auto linf = space(3, "inf");
  const auto multi = estimate_multilinear_norm(V, linf, OptimConfig{});
  CHECK(multi.value >= 6.0 - 1e-4);
  CHECK(multi.kind == EstimateKind::Multilinear);
  CHECK(multi.witness.size() == 2);
  check_certificate(V, linf, multi);

  const auto l4 = space(3, "4");
  const auto b = estimate_blocked_norm(V, Partition{{1, 1}}, l4, OptimConfig{});
  CHECK(b.value >= 6.0 / std::sqrt(3.0) - 1e-3);
  CHECK_THROWS_AS(estimate_blocked_norm(V, Partition{{1, 2}}, l4, quick()), InputError);
  CHECK_THROWS_AS(estimate_blocked_norm(V, Partition{{2, 0}}, l4, quick()), InputError);
  CHECK_THROWS_AS(estimate_multilinear_norm(HomogeneousPolynomial(0, 3, Field::Complex), l4,
                                            quick()),
                  InputError);
}

TEST_CASE("monotone consistency of poly, blocked and multilinear estimates") {
  for (int t = 0; t < 4; ++t) {
    const auto P = random_polynomial(4, 3, Field::Complex, 40 + t);
    for (const char* p : {"1", "3", "inf"}) {
      const auto s = space(3, p);
      const auto cfg = quick(20);
      const auto poly = estimate_poly_norm(P, s, cfg);
      const auto full = estimate_blocked_norm(P, Partition{{4}}, s, cfg);
      CHECK(std::abs(full.value - poly.value) <= 1e-8 * std::max(1.0, poly.value));
      const auto b22 = estimate_blocked_norm(P, Partition{{2, 2}}, s, cfg);
      const auto b211 = estimate_blocked_norm(P, Partition{{2, 1, 1}}, s, cfg);
      const auto multi = estimate_multilinear_norm(P, s, cfg);
      CHECK(b22.value >= poly.value - 1e-8);
      CHECK(b211.value >= poly.value - 1e-8);
      CHECK(multi.value >= poly.value - 1e-8);
      check_certificate(P, s, b211);
    }
  }
}

TEST_CASE("a multiplicity-one slot update is optimal against perturbations") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto P = random_polynomial(3, 3, Field::Complex, 5);
  for (const char* p : {"1", "2", "3", "inf"}) {
    const auto s = space(3, p);
    BlockTuple bt({{random_unit_vector(s, rng), 1},
                   {random_unit_vector(s, rng), 1},
                   {random_unit_vector(s, rng), 1}});
    const auto R = slot_polynomial(P, bt, 0);
    Vector r(3);
    for (int j = 0; j < 3; ++j) {
      MultiIndex e(3, 0);
      e[j] = 1;
      r[j] = R.coefficient(e);
    }
    bt[0].vector = dual_align(r, s);
    const double obj = std::abs(polarize_blocked(P, bt));
    double best = 0.0;
    for (int t = 0; t < 1000; ++t) {
      BlockTuple y = bt;
      Vector pert(3);
      for (int j = 0; j < 3; ++j) pert[j] = C(g(rng), g(rng));
      y[0].vector = project_to_sphere(bt[0].vector + 0.05 * pert, s);
      best = std::max(best, std::abs(polarize_blocked(P, y)));
    }
    CHECK(best <= obj + 1e-10);
  }
}

TEST_CASE("determinism across seeds and thread counts") {
  const auto P = random_polynomial(3, 3, Field::Complex, 64);
  const auto s = space(3, "3");
  OptimConfig a = quick(24);
  const auto e1 = estimate_poly_norm(P, s, a);
  const auto e2 = estimate_poly_norm(P, s, a);
  CHECK(e1.value == e2.value);
  CHECK(e1.witness[0].vector == e2.witness[0].vector);
  OptimConfig threaded = a;
  threaded.threads = 4;
  const auto e3 = estimate_poly_norm(P, s, threaded);
  CHECK(e3.value == e1.value);
  CHECK(e3.witness[0].vector == e1.witness[0].vector);
  const auto m1 = estimate_multilinear_norm(P, s, a);
  const auto m2 = estimate_multilinear_norm(P, s, threaded);
  CHECK(m1.value == m2.value);
}

TEST_CASE("ratio estimates") {
  const auto V = varopoulos();
  const auto r = estimate_ratio(V, space(3, "inf"), OptimConfig{}, 5.0);
  CHECK(r.rigorous);
  CHECK(r.ratio >= 1.2 - 1e-4);
  CHECK_THROWS_AS(estimate_ratio(V, space(3, "inf"), quick(), 0.0), InputError);
  for (const char* p : {"1", "2", "inf"}) {
    const auto m = estimate_ratio(monomial({4, 0}, Field::Complex), space(2, p), quick());
    CHECK(m.ratio == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(m.rigorous);
  }
  OptimConfig cfg = quick(8);
  cfg.spectral_shortcut = false;
  const auto q = estimate_ratio(random_polynomial(2, 4, Field::Complex, 3), space(4, "2"), cfg);
  CHECK(std::abs(q.ratio - 1.0) < 1e-6);
  const auto j = to_json(r);
  CHECK(j.at("rigorous").get<bool>());
}

TEST_CASE("Bochnak ratio") {
  const auto b = estimate_bochnak_ratio(real_l1_example(1), space(2, "1", Field::Real),
                                        OptimConfig{});
  CHECK(b.ratio >= 2.0 - 1e-3);
  for (int t = 0; t < 3; ++t) {
    const auto q = estimate_bochnak_ratio(random_polynomial(2, 3, Field::Real, 11 + t),
                                          space(3, "2", Field::Real), quick());
    CHECK(std::abs(q.ratio - 1.0) < 1e-6);
  }
  for (const char* p : {"1", "2", "4", "inf"}) {
    const auto lin = estimate_bochnak_ratio(random_polynomial(1, 3, Field::Real, 5),
                                            space(3, p, Field::Real), quick());
    CHECK(std::abs(lin.ratio - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(estimate_bochnak_ratio(varopoulos(), space(3, "2"), quick()), InputError);
}

TEST_CASE("estimate json") {
  const auto e = estimate_poly_norm(varopoulos(), space(3, "inf"), quick());
  const auto j = to_json(e);
  CHECK(j.at("kind") == "poly");
  CHECK(j.at("witness").size() == 3);
  CHECK(j.at("value").get<double>() == e.value);
  const auto m = to_json(estimate_multilinear_norm(varopoulos(), space(3, "inf"), quick()));
  CHECK(m.at("witness").size() == 2);
  CHECK(m.at("multiplicities") == nlohmann::json::array({1, 1}));
}
