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

#include "cpolar/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "cpolar/errors.hpp"
#include "cpolar/polarize.hpp"

namespace cpolar {

namespace {

// Allocation-free ||a - b|| for the hot loops of net construction.
double distance(const Vector& a, const Vector& b, const SpaceSpec& spec) {
  const Eigen::Index n = a.size();
  if (spec.p.is_infinite()) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
  if (spec.p.is_one()) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
  }
  if (spec.p.is_two()) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
  }
  const double p = spec.p.value();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += std::pow(std::abs(a[i] - b[i]), p);
  return std::pow(s, 1.0 / p);
}

void check_net_budget(const SpaceSpec& spec, double eta) {
  if (!(eta > 0.0 && eta < 1.0))
    throw InputError("eta must lie in (0, 1)");
  const bool real = spec.field == Field::Real;
  if ((real && spec.dim > kMaxRealNetDim) ||
      (!real && spec.dim > kMaxComplexNetDim))
    throw UnsupportedError(
        "eta-net construction is limited to real dimension <= " +
        std::to_string(kMaxRealNetDim) + " and complex dimension <= " +
        std::to_string(kMaxComplexNetDim));
}

std::vector<Vector> random_sample(const SpaceSpec& spec, int count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_unit_vector(spec, rng));
  return out;
}

double nearest_distance(const Vector& u, const std::vector<Vector>& net,
                        const SpaceSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& h : net) best = std::min(best, distance(u, h, spec));
  return best;
}

}  // namespace

std::vector<Vector> sphere_grid(const SpaceSpec& spec) {
  const int D = spec.field == Field::Real ? spec.dim : 2 * spec.dim;
  constexpr double kPi = std::numbers::pi;
  std::vector<std::vector<double>> pts;
  if (D == 1) {
    pts = {{1.0}, {-1.0}};
  } else if (D == 2) {
    const int g = 4096;
    for (int i = 0; i < g; ++i) {
      const double t = 2.0 * kPi * i / g;
      pts.push_back({std::cos(t), std::sin(t)});
    }
  } else if (D == 3) {
    const int gt = 64, gp = 128;
    for (int i = 0; i <= gt; ++i) {
      const double t = kPi * i / gt;
      for (int j = 0; j < gp; ++j) {
        const double f = 2.0 * kPi * j / gp;
        pts.push_back({std::sin(t) * std::cos(f), std::sin(t) * std::sin(f),
                       std::cos(t)});
      }
    }
  } else if (D == 4) {
    const int gs = 12, gt = 12, gp = 48;
    for (int a = 0; a <= gs; ++a) {
      const double s = kPi * a / gs;
      for (int i = 0; i <= gt; ++i) {
        const double t = kPi * i / gt;
        for (int j = 0; j < gp; ++j) {
          const double f = 2.0 * kPi * j / gp;
          pts.push_back({std::cos(s), std::sin(s) * std::cos(t),
                         std::sin(s) * std::sin(t) * std::cos(f),
                         std::sin(s) * std::sin(t) * std::sin(f)});
        }
      }
    }
  } else {
    throw UnsupportedError("sphere_grid: real dimension must be <= 4");
  }

  std::vector<Vector> out;
  out.reserve(pts.size());
  for (const auto& c : pts) {
    Vector v(spec.dim);
    for (int j = 0; j < spec.dim; ++j)
      v[j] = spec.field == Field::Real ? Scalar(c[j], 0.0)
                                       : Scalar(c[2 * j], c[2 * j + 1]);
    out.push_back(project_to_sphere(v, spec));
  }
  return out;
}

double covering_radius(const SpaceSpec& spec, const std::vector<Vector>& net,
                       int samples, std::uint64_t seed) {
  if (net.empty()) throw InputError("covering_radius: empty net");
  double worst = 0.0;
  for (const Vector& u : random_sample(spec, samples, seed))
    worst = std::max(worst, nearest_distance(u, net, spec));
  return worst;
}

std::vector<Vector> build_eta_net(const SpaceSpec& spec, double eta,
                                  std::uint64_t seed) {
  check_net_budget(spec, eta);
  std::vector<Vector> cand = random_sample(spec, kNetSamples, seed);
  for (Vector& g : sphere_grid(spec)) cand.push_back(std::move(g));

  std::vector<Vector> net{basis_vector(spec.dim, 0)};
  std::vector<double> dist(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
    dist[i] = distance(cand[i], net[0], spec);

  // Farthest-point insertion until the candidates are covered at radius r,
  // then re-check on an independent sample and tighten if needed.
  double r = 0.9 * eta;
  constexpr int kRounds = 8;
  for (int round = 0; round < kRounds; ++round) {
    for (;;) {
      const auto it = std::max_element(dist.begin(), dist.end());
      if (*it < r) break;
      const Vector h = cand[static_cast<std::size_t>(it - dist.begin())];
      for (std::size_t i = 0; i < cand.size(); ++i)
        dist[i] = std::min(dist[i], distance(cand[i], h, spec));
      net.push_back(h);
    }
    const std::uint64_t check_seed = seed ^ (0x9e3779b97f4a7c15ULL + round);
    std::vector<Vector> fresh = random_sample(spec, kNetSamples, check_seed);
    double worst = 0.0;
    for (const Vector& u : fresh)
      worst = std::max(worst, nearest_distance(u, net, spec));
    if (worst < eta) return net;

    for (Vector& u : fresh) {
      dist.push_back(nearest_distance(u, net, spec));
      cand.push_back(std::move(u));
    }
    r *= 0.8;
  }
  throw ConvergenceError("eta-net failed fresh coverage verification", eta);
}

double SparseL1::l1_norm() const {
  double s = 0.0;
  for (const auto& [j, c] : entries) s += std::abs(c);
  return s;
}

Vector SparseL1::dense(int d) const {
  Vector z = Vector::Zero(d);
  for (const auto& [j, c] : entries) {
    if (j < 0 || j >= d) throw InputError("SparseL1: index out of range");
    z[j] += c;
  }
  return z;
}

Vector QuotientMap::apply(const SparseL1& z) const {
  Vector out = Vector::Zero(target.dim);
  for (const auto& [j, c] : z.entries) {
    if (j < 0 || j >= d()) throw InputError("SparseL1: index out of range");
    out += c * net[static_cast<std::size_t>(j)];
  }
  return out;
}

int QuotientMap::nearest(const Vector& u) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d(); ++j) {
    const double dj = distance(u, net[static_cast<std::size_t>(j)], target);
    if (dj < bd) {
      bd = dj;
      best = j;
    }
  }
  return best;
}

QuotientMap build_quotient(const SpaceSpec& spec, double eta, double epsilon,
                           std::uint64_t seed) {
  check_net_budget(spec, eta);
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (!(1.0 / (1.0 - eta) < 1.0 + epsilon))
    throw InputError("need 1/(1 - eta) < 1 + epsilon");
  QuotientMap Q{spec, build_eta_net(spec, eta, seed), eta, epsilon, Matrix()};
  Q.matrix.resize(spec.dim, Q.d());
  for (int j = 0; j < Q.d(); ++j) Q.matrix.col(j) = Q.net[static_cast<std::size_t>(j)];
  return Q;
}

Preimage greedy_preimage(const QuotientMap& Q, const Vector& x,
                         double residual_tol, int max_steps) {
  check_vector(x, Q.target);
  if (!(residual_tol > 0.0)) throw InputError("residual_tol must be positive");
  if (max_steps < 0) throw InputError("max_steps must be nonnegative");

  Preimage out;
  std::map<int, Scalar> coeffs;
  Vector qz = Vector::Zero(Q.target.dim);
  const double x_norm = norm(x, Q.target);
  double scale = x_norm;  // x_norm * eta^j
  for (;;) {
    // Residual recomputed from the accumulated image, so the stopping test
    // and the reported residual are the same number.
    const Vector r = x - qz;
    const double delta = norm(r, Q.target);
    out.history.push_back(delta);
    if (out.steps > 0) {
      scale *= Q.eta;
      if (!(delta < scale)) out.geometric_decay = false;
    }
    if (delta <= residual_tol) {
      out.residual = delta;
      break;
    }
    if (out.steps >= max_steps)
      throw ConvergenceError("greedy_preimage: step budget exhausted", delta);
    const int j = Q.nearest(r / delta);
    coeffs[j] += delta;
    qz += delta * Q.net[static_cast<std::size_t>(j)];
    ++out.steps;
  }
  for (const auto& [j, c] : coeffs) out.z.entries.emplace_back(j, c);
  return out;
}

TransferReport verify_transfer_bound(const HomogeneousPolynomial& P,
                                     const QuotientMap& Q,
                                     const OptimConfig& cfg, int samples,
                                     std::uint64_t seed) {
  const int k = P.degree();
  if (k < 1) throw InputError("transfer bound needs degree >= 1");
  if (k > kMaxTransferDegree)
    throw CostError("transfer bound is limited to degree <= " +
                    std::to_string(kMaxTransferDegree));
  if (P.dim() != Q.target.dim)
    throw InputError("polynomial dimension does not match the quotient target");
  if (P.field() != Q.target.field)
    throw InputError("polynomial field does not match the quotient target");
  if (samples < 1) throw InputError("samples must be positive");

  TransferReport rep;
  rep.k = k;
  rep.d = Q.d();
  rep.samples = samples;
  rep.poly_norm = estimate_poly_norm(P, Q.target, cfg).value;
  rep.c_l1 = exact_c_l1(k, Q.d());
  rep.bound = std::pow(1.0 + Q.epsilon, k) * rep.c_l1.to_double() * rep.poly_norm;

  const HomogeneousPolynomial composed = compose_linear(P, Q.matrix);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<Vector> xs;
    std::vector<Vector> zs;
    bool lift_ok = true;
    for (int i = 0; i < k; ++i) {
      xs.push_back(random_unit_vector(Q.target, rng));
      const Preimage pre = greedy_preimage(Q, xs.back());
      const double ratio = pre.z.l1_norm() / norm(xs.back(), Q.target);
      rep.max_l1_ratio = std::max(rep.max_l1_ratio, ratio);
      rep.max_residual = std::max(rep.max_residual, pre.residual);
      if (ratio > 1.0 + Q.epsilon) lift_ok = false;
      zs.push_back(pre.z.dense(Q.d()));
    }
    const Scalar direct = polarize_blocked(P, BlockTuple::from_vectors(xs));
    const Scalar chained =
        polarize_blocked(composed, BlockTuple::from_vectors(zs));
    rep.max_chain_error = std::max(
        rep.max_chain_error, std::abs(chained - direct) / (1.0 + std::abs(direct)));
    const double slack = rep.bound > 0.0 ? std::abs(direct) / rep.bound : 0.0;
    rep.max_slack = std::max(rep.max_slack, slack);
    if (!lift_ok || std::abs(direct) > rep.bound) ++rep.violations;
  }
  return rep;
}

}  // namespace cpolar
