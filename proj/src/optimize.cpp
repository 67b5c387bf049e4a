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

#include "cpolar/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

namespace cpolar {

void OptimConfig::validate() const {
  if (starts < 1) throw InputError("OptimConfig: starts must be >= 1");
  if (max_iters < 1) throw InputError("OptimConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw InputError("OptimConfig: tol must be > 0");
  if (threads < 1) throw InputError("OptimConfig: threads must be >= 1");
}

std::string to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Poly:
      return "poly";
    case EstimateKind::Multilinear:
      return "multilinear";
    case EstimateKind::Blocked:
      return "blocked";
  }
  return "unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t start_seed(std::uint64_t seed, int index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

bool smooth_sphere(const SpaceSpec& spec) {
  return !spec.p.is_infinite() && !spec.p.is_one();
}

Vector real_part_only(const Vector& v) {
  Vector r(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) r[j] = Scalar(v[j].real(), 0.0);
  return r;
}

Vector ones_start(const SpaceSpec& spec) {
  return project_to_sphere(Vector::Ones(spec.dim), spec);
}

// Euclidean projection onto the l_1 ball: soft-threshold the moduli.
Vector project_l1_ball(const Vector& y) {
  const Eigen::Index n = y.size();
  std::vector<double> mod(n);
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) total += (mod[j] = std::abs(y[j]));
  if (total <= 1.0) return y;
  std::vector<double> u = mod;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  Vector x(n);
  for (Eigen::Index j = 0; j < n; ++j)
    x[j] = std::max(mod[j] - tau, 0.0) * unit_phase(y[j]);
  return x;
}

Vector project_linf_ball(const Vector& y) {
  Vector x = y;
  for (Eigen::Index j = 0; j < y.size(); ++j)
    if (std::abs(y[j]) > 1.0) x[j] = unit_phase(y[j]);
  return x;
}

// Maps a trial point back to the unit sphere. Returns false for a zero
// point.
bool retract(const SpaceSpec& spec, Vector& y) {
  if (spec.p.is_infinite())
    y = project_linf_ball(y);
  else if (spec.p.is_one())
    y = project_l1_ball(y);
  const double r = norm(y, spec);
  if (!(r > 0.0) || !std::isfinite(r)) return false;
  y /= r;
  return true;
}

// Complex-form ascent direction of |P(x)|^2 at a unit x. On smooth spheres
// the radial part is removed via the gradient of the scale-invariant
// objective |P|^2 / ||x||^{2k}.
Vector ascent_direction(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                        const Vector& x, Scalar px) {
  const Vector g = gradient(P, x);
  Vector d(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) d[j] = 2.0 * px * std::conj(g[j]);
  if (smooth_sphere(spec)) {
    const double pv = spec.p.value();
    const double f = std::norm(px);
    const double k2 = 2.0 * P.degree();
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double a = std::abs(x[j]);
      if (a == 0.0) continue;
      d[j] -= k2 * f * std::pow(a, pv - 2.0) * x[j];
    }
  }
  if (spec.field == Field::Real) d = real_part_only(d);
  return d;
}

bool lex_less(const BlockTuple& a, const BlockTuple& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const Vector& u = a[i].vector;
    const Vector& v = b[i].vector;
    for (Eigen::Index j = 0; j < std::min(u.size(), v.size()); ++j) {
      if (u[j].real() != v[j].real()) return u[j].real() < v[j].real();
      if (u[j].imag() != v[j].imag()) return u[j].imag() < v[j].imag();
    }
  }
  return a.size() < b.size();
}

struct StartResult {
  BlockTuple witness;
  double value = -1.0;
  bool converged = false;
};

// Runs fn(i) for every start and reduces to the best by value, ties broken
// by the lexicographically smallest witness. Independent of scheduling.
template <typename Fn>
std::pair<StartResult, int> run_starts(int count, int threads, Fn fn) {
  std::vector<StartResult> results(count);
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int i = next++; i < count; i = next++) results[i] = fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  int converged = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].converged) ++converged;
    if (i == 0) continue;
    const double v = results[i].value;
    const double bv = results[best].value;
    if (v > bv || (v == bv && lex_less(results[i].witness, results[best].witness)))
      best = i;
  }
  return {std::move(results[best]), converged};
}

void check_field(const HomogeneousPolynomial& P, const SpaceSpec& spec) {
  if (P.dim() != spec.dim)
    throw InputError("polynomial dim " + std::to_string(P.dim()) +
                     " does not match space dim " + std::to_string(spec.dim));
  if (P.field() != spec.field)
    throw InputError("polynomial field (" + to_string(P.field()) +
                     ") does not match space field (" + to_string(spec.field) +
                     ")");
}

bool use_spectral(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                  const OptimConfig& cfg) {
  return cfg.spectral_shortcut && P.degree() == 2 && spec.p.is_two();
}

NormEstimate finish(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                    const OptimConfig& cfg, EstimateKind kind,
                    BlockTuple witness, int converged, std::string method) {
  NormEstimate e;
  for (std::size_t i = 0; i < witness.size(); ++i)
    witness[i].vector = project_to_sphere(witness[i].vector, spec);
  e.value = certificate_value(P, spec, witness);
  e.kind = kind;
  e.witness = std::move(witness);
  e.converged_starts = converged;
  e.config = cfg;
  e.method = std::move(method);
  return e;
}

BlockTuple diagonal(const Vector& x, const Partition& parts) {
  std::vector<Block> blocks;
  for (int m : parts.parts) blocks.push_back({x, m});
  return BlockTuple(std::move(blocks));
}

struct BlockAscent {
  BlockTuple bt;
  double value = 0.0;
  bool converged = false;
};

// Block-coordinate ascent: multiplicity-one slots are solved exactly by
// dual alignment, higher multiplicities by a local ascent of the slot
// polynomial started at the current vector. Never decreases the objective.
BlockAscent ascend_blocks(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                          BlockTuple bt, const OptimConfig& cfg) {
  for (std::size_t i = 0; i < bt.size(); ++i)
    bt[i].vector = project_to_sphere(bt[i].vector, spec);
  double obj = certificate_value(P, spec, bt);
  const int inner_iters = std::max(50, cfg.max_iters / 10);
  BlockAscent out;
  for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
    const double before = obj;
    for (std::size_t s = 0; s < bt.size(); ++s) {
      const HomogeneousPolynomial R = slot_polynomial(P, bt, s);
      if (R.is_zero()) continue;
      const double current = std::abs(evaluate(R, bt[s].vector));
      Vector y;
      if (bt[s].multiplicity == 1) {
        Vector r(spec.dim);
        for (int j = 0; j < spec.dim; ++j) {
          MultiIndex e(spec.dim, 0);
          e[j] = 1;
          r[j] = R.coefficient(e);
        }
        y = dual_align(r, spec);
      } else {
        y = ascend_poly(R, spec, bt[s].vector, inner_iters, cfg.tol).x;
      }
      const double candidate = std::abs(evaluate(R, y));
      if (candidate >= current) {
        bt[s].vector = y;
        obj = candidate;
      } else {
        obj = current;
      }
    }
    if (obj - before <= cfg.tol * obj) {
      out.converged = true;
      break;
    }
  }
  out.value = certificate_value(P, spec, bt);
  out.bt = std::move(bt);
  return out;
}

NormEstimate estimate_blocked_impl(
    const HomogeneousPolynomial& P, const Partition& parts,
    const SpaceSpec& spec, const OptimConfig& cfg,
    const std::optional<std::vector<BlockTuple>>& seeds, EstimateKind kind) {
  cfg.validate();
  check_field(P, spec);
  if (P.degree() < 1)
    throw InputError("multilinear/blocked norms need degree >= 1");
  if (parts.parts.empty() ||
      std::any_of(parts.parts.begin(), parts.parts.end(),
                  [](int m) { return m < 1; }))
    throw InputError("blocked norm: parts must be positive");
  if (parts.degree() != P.degree())
    throw InputError("blocked norm: parts sum to " +
                     std::to_string(parts.degree()) + ", degree is " +
                     std::to_string(P.degree()));

  if (P.is_zero())
    return finish(P, spec, cfg, kind, diagonal(ones_start(spec), parts), 0,
                  "constant");

  if (use_spectral(P, spec, cfg)) {
    const SpectralResult sr = spectral_quadratic(P);
    return finish(P, spec, cfg, kind, diagonal(sr.witness, parts), 1,
                  "spectral");
  }

  std::vector<BlockTuple> extra;
  if (seeds) {
    for (const BlockTuple& s : *seeds) {
      if (s.size() != parts.parts.size())
        throw InputError("blocked norm: seed has wrong number of blocks");
      std::vector<Block> blocks;
      for (std::size_t i = 0; i < s.size(); ++i) {
        check_vector(s[i].vector, spec);
        blocks.push_back({s[i].vector, parts.parts[i]});
      }
      extra.emplace_back(std::move(blocks));
    }
  } else {
    const NormEstimate poly = estimate_poly_norm(P, spec, cfg);
    extra.push_back(diagonal(poly.witness[0].vector, parts));
  }

  const int count = std::max(cfg.starts, 1 + static_cast<int>(extra.size()));
  auto [best, converged] = run_starts(count, cfg.threads, [&](int i) {
    BlockTuple start;
    if (i == 0) {
      start = diagonal(ones_start(spec), parts);
    } else if (i <= static_cast<int>(extra.size())) {
      start = extra[i - 1];
    } else {
      std::mt19937_64 rng(start_seed(cfg.seed, i));
      std::vector<Block> blocks;
      for (int m : parts.parts) blocks.push_back({random_unit_vector(spec, rng), m});
      start = BlockTuple(std::move(blocks));
    }
    BlockAscent a = ascend_blocks(P, spec, std::move(start), cfg);
    return StartResult{std::move(a.bt), a.value, a.converged};
  });
  return finish(P, spec, cfg, kind, std::move(best.witness), converged,
                "multistart");
}

}  // namespace

double certificate_value(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                         const BlockTuple& witness) {
  double denom = 1.0;
  for (const Block& b : witness.blocks()) {
    check_vector(b.vector, spec);
    denom *= std::pow(norm(b.vector, spec), b.multiplicity);
  }
  if (denom == 0.0) throw DegenerateInputError("witness has a zero vector");
  return std::abs(polarize_blocked(P, witness)) / denom;
}

Ascent ascend_poly(const HomogeneousPolynomial& P, const SpaceSpec& spec,
                   const Vector& x0, int max_iters, double tol) {
  Ascent out;
  Vector x = x0;
  if (!retract(spec, x)) throw DegenerateInputError("ascend_poly: zero start");
  if (spec.field == Field::Real) x = real_part_only(x);
  Scalar px = evaluate(P, x);
  double f = std::norm(px);
  out.x = x;
  out.value = std::sqrt(f);
  if (P.degree() == 0 || f == 0.0) {
    out.converged = P.degree() == 0;
    return out;
  }

  double step = -1.0;
  int quiet = 0;
  for (int it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    const Vector d = ascent_direction(P, spec, x, px);
    const double dn = d.norm();
    if (dn == 0.0) {
      out.converged = true;
      break;
    }
    if (step < 0.0) step = 0.1 * x.norm() / dn;
    bool moved = false;
    Vector y;
    Scalar py;
    double fy = 0.0;
    while (step * dn > 1e-15 * x.norm()) {
      y = x + step * d;
      if (retract(spec, y)) {
        py = evaluate(P, y);
        fy = std::norm(py);
        if (fy > f) {
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) {
      out.converged = true;  // stationary to working precision
      break;
    }
    const double rel = (fy - f) / fy;
    x = std::move(y);
    px = py;
    f = fy;
    step *= 2.0;
    if (rel < tol) {
      if (++quiet >= 2) {
        out.converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  out.x = x;
  out.value = std::sqrt(f);
  return out;
}

NormEstimate estimate_poly_norm(const HomogeneousPolynomial& P,
                                const SpaceSpec& spec, const OptimConfig& cfg,
                                const std::vector<Vector>& seeds) {
  cfg.validate();
  check_field(P, spec);
  for (const Vector& s : seeds) check_vector(s, spec);
  auto single = [&](const Vector& x) {
    return P.degree() == 0 ? BlockTuple() : BlockTuple({{x, P.degree()}});
  };

  if (P.degree() == 0 || P.is_zero()) {
    NormEstimate e;
    e.value = P.degree() == 0 ? std::abs(P.coefficient(MultiIndex(P.dim(), 0)))
                              : 0.0;
    e.kind = EstimateKind::Poly;
    e.witness = single(ones_start(spec));
    e.config = cfg;
    e.method = "constant";
    return e;
  }

  if (use_spectral(P, spec, cfg)) {
    const SpectralResult sr = spectral_quadratic(P);
    return finish(P, spec, cfg, EstimateKind::Poly, single(sr.witness), 1,
                  "spectral");
  }

  const int count = std::max(cfg.starts, 1 + static_cast<int>(seeds.size()));
  auto [best, converged] = run_starts(count, cfg.threads, [&](int i) {
    Vector start;
    if (i == 0) {
      start = ones_start(spec);
    } else if (i <= static_cast<int>(seeds.size())) {
      start = seeds[i - 1];
    } else {
      std::mt19937_64 rng(start_seed(cfg.seed, i));
      start = random_unit_vector(spec, rng);
    }
    const Ascent a = ascend_poly(P, spec, start, cfg.max_iters, cfg.tol);
    StartResult r;
    r.witness = single(a.x);
    r.value = certificate_value(P, spec, r.witness);
    r.converged = a.converged;
    return r;
  });
  return finish(P, spec, cfg, EstimateKind::Poly, std::move(best.witness),
                converged, "multistart");
}

NormEstimate estimate_multilinear_norm(
    const HomogeneousPolynomial& P, const SpaceSpec& spec,
    const OptimConfig& cfg, const std::optional<std::vector<BlockTuple>>& seeds) {
  if (P.degree() < 1)
    throw InputError("multilinear norm needs degree >= 1");
  Partition ones{std::vector<int>(P.degree(), 1)};
  std::optional<std::vector<BlockTuple>> expanded;
  if (seeds) {
    expanded.emplace();
    for (const BlockTuple& s : *seeds) expanded->push_back(expand_to_multilinear(s));
  }
  return estimate_blocked_impl(P, ones, spec, cfg, expanded,
                               EstimateKind::Multilinear);
}

NormEstimate estimate_blocked_norm(
    const HomogeneousPolynomial& P, const Partition& parts,
    const SpaceSpec& spec, const OptimConfig& cfg,
    const std::optional<std::vector<BlockTuple>>& seeds) {
  return estimate_blocked_impl(P, parts, spec, cfg, seeds,
                               EstimateKind::Blocked);
}

BlockTuple expand_to_multilinear(const BlockTuple& bt) {
  std::vector<Block> blocks;
  for (const Block& b : bt.blocks())
    for (int i = 0; i < b.multiplicity; ++i) blocks.push_back({b.vector, 1});
  return BlockTuple(std::move(blocks));
}

Matrix quadratic_coefficient_matrix(const HomogeneousPolynomial& P) {
  if (P.degree() != 2)
    throw InputError("quadratic form expected, got degree " +
                     std::to_string(P.degree()));
  const int n = P.dim();
  Matrix A = Matrix::Zero(n, n);
  for (const auto& [alpha, c] : P.terms()) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < alpha[j]; ++r) idx.push_back(j);
    if (idx[0] == idx[1]) {
      A(idx[0], idx[0]) = c;
    } else {
      A(idx[0], idx[1]) = 0.5 * c;
      A(idx[1], idx[0]) = 0.5 * c;
    }
  }
  return A;
}

SpectralResult spectral_quadratic(const HomogeneousPolynomial& P) {
  const Matrix A = quadratic_coefficient_matrix(P);
  const int n = P.dim();
  SpectralResult out;
  if (P.is_zero()) {
    out.witness = basis_vector(n, 0);
    return out;
  }
  const Matrix B = A.adjoint() * A;

  std::mt19937_64 rng(0x5eedf00dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const bool cplx = P.field() == Field::Complex;
  Vector v(n);
  for (int j = 0; j < n; ++j)
    v[j] = Scalar(gauss(rng), cplx ? gauss(rng) : 0.0);
  v.normalize();

  double lambda = 0.0;
  int quiet = 0;
  constexpr int kMaxIters = 200000;
  for (int it = 0; it < kMaxIters; ++it) {
    out.iterations = it + 1;
    Vector w = B * v;
    const double wn = w.norm();
    if (wn == 0.0) break;
    const double next = v.dot(w).real();
    v = w / wn;
    if (std::abs(next - lambda) <= 1e-15 * std::abs(next)) {
      if (++quiet >= 3) {
        lambda = next;
        break;
      }
    } else {
      quiet = 0;
    }
    lambda = next;
  }

  // With A v = sigma u and A symmetric, A conj(u) = sigma conj(v), so
  // x = v +- conj(u) satisfies A x = +-sigma conj(x) and |x^T A x| = sigma.
  const Vector Av = A * v;
  out.sigma = Av.norm();
  const Vector u = Av / out.sigma;
  Vector plus = v + u.conjugate();
  Vector minus = v - u.conjugate();
  Vector x = plus.norm() >= minus.norm() ? plus : minus;
  if (!cplx) x = real_part_only(x);
  out.witness = x / x.norm();
  return out;
}

double spectral_norm_quadratic(const HomogeneousPolynomial& P, int n) {
  if (P.degree() != 2)
    throw InputError("spectral_norm_quadratic: degree must be 2");
  if (P.dim() != n)
    throw InputError("spectral_norm_quadratic: dimension mismatch");
  return spectral_quadratic(P).sigma;
}

RatioReport estimate_ratio(const HomogeneousPolynomial& P,
                           const SpaceSpec& spec, const OptimConfig& cfg,
                           std::optional<double> exact_denominator) {
  RatioReport r;
  r.poly = estimate_poly_norm(P, spec, cfg);
  std::vector<BlockTuple> seeds;
  if (r.poly.witness.size() == 1)
    seeds.push_back(BlockTuple({{r.poly.witness[0].vector, P.degree()}}));
  r.multilinear = estimate_multilinear_norm(P, spec, cfg, seeds);
  if (exact_denominator) {
    if (!(*exact_denominator > 0.0))
      throw InputError("exact denominator must be positive");
    r.denominator = *exact_denominator;
    r.rigorous = true;
  } else {
    if (r.poly.value == 0.0)
      throw DegenerateInputError("estimate_ratio: polynomial norm is zero");
    r.denominator = r.poly.value;
  }
  r.ratio = r.multilinear.value / r.denominator;
  return r;
}

BochnakReport estimate_bochnak_ratio(const HomogeneousPolynomial& P,
                                     const SpaceSpec& spec,
                                     const OptimConfig& cfg) {
  if (P.field() != Field::Real)
    throw InputError("Bochnak ratio needs a real polynomial");
  if (spec.field != Field::Real)
    throw InputError("Bochnak ratio needs a real space");
  BochnakReport r;
  r.real_norm = estimate_poly_norm(P, spec, cfg);
  if (r.real_norm.value == 0.0)
    throw DegenerateInputError("Bochnak ratio: polynomial norm is zero");
  std::vector<Vector> seeds;
  if (r.real_norm.witness.size() == 1) seeds.push_back(r.real_norm.witness[0].vector);
  r.complex_norm = estimate_poly_norm(complexify(P),
                                      spec.with_field(Field::Complex), cfg,
                                      seeds);
  r.ratio = r.complex_norm.value / r.real_norm.value;
  return r;
}

namespace {

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j)
    a.push_back({v[j].real(), v[j].imag()});
  return a;
}

}  // namespace

nlohmann::json to_json(const NormEstimate& e) {
  nlohmann::json j;
  j["value"] = e.value;
  j["kind"] = to_string(e.kind);
  if (e.kind == EstimateKind::Poly) {
    j["witness"] = e.witness.size() ? vector_json(e.witness[0].vector)
                                    : nlohmann::json::array();
  } else {
    nlohmann::json w = nlohmann::json::array();
    nlohmann::json mult = nlohmann::json::array();
    for (const Block& b : e.witness.blocks()) {
      w.push_back(vector_json(b.vector));
      mult.push_back(b.multiplicity);
    }
    j["witness"] = w;
    j["multiplicities"] = mult;
  }
  j["converged_starts"] = e.converged_starts;
  j["seed"] = e.config.seed;
  j["method"] = e.method;
  return j;
}

nlohmann::json to_json(const RatioReport& r) {
  return {{"poly", to_json(r.poly)},
          {"multilinear", to_json(r.multilinear)},
          {"denominator", r.denominator},
          {"ratio", r.ratio},
          {"rigorous", r.rigorous}};
}

nlohmann::json to_json(const BochnakReport& r) {
  return {{"real_norm", to_json(r.real_norm)},
          {"complex_norm", to_json(r.complex_norm)},
          {"ratio", r.ratio}};
}

}  // namespace cpolar
