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

#include "cpolar/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "cpolar/errors.hpp"
#include "cpolar/optimize.hpp"
#include "cpolar/polarize.hpp"
#include "cpolar/poly.hpp"
#include "cpolar/quotient.hpp"

namespace cpolar {

using nlohmann::json;

std::string to_string(Direction d) {
  switch (d) {
    case Direction::TwoSided: return "two-sided";
    case Direction::AtLeast: return "at-least";
    case Direction::AtMost: return "at-most";
  }
  return "two-sided";
}

Direction direction_from_string(const std::string& s) {
  if (s == "two-sided") return Direction::TwoSided;
  if (s == "at-least") return Direction::AtLeast;
  if (s == "at-most") return Direction::AtMost;
  throw InputError("unknown claim direction '" + s + "'");
}

bool evaluate_claim(const Claim& c) {
  switch (c.direction) {
    case Direction::TwoSided:
      return std::abs(c.observed - c.expected) <= c.tolerance;
    case Direction::AtLeast:
      return c.observed >= c.expected - c.tolerance;
    case Direction::AtMost:
      return c.observed <= c.expected + c.tolerance;
  }
  return false;
}

Claim make_claim(std::string description, double expected, double observed,
                 double tolerance, Direction direction) {
  Claim c{std::move(description), expected, observed, tolerance, direction, false};
  c.pass = evaluate_claim(c);
  return c;
}

bool ExperimentReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const Claim& c) { return c.pass; });
}

json to_json(const ExperimentReport& r) {
  json claims = json::array();
  for (const Claim& c : r.claims)
    claims.push_back({{"description", c.description},
                      {"expected", c.expected},
                      {"observed", c.observed},
                      {"tolerance", c.tolerance},
                      {"direction", to_string(c.direction)},
                      {"pass", c.pass}});
  return {{"name", r.name},       {"params", r.params}, {"claims", claims},
          {"seed", r.seed},       {"wall_time", r.wall_time},
          {"all_pass", r.all_pass()}};
}

ExperimentReport report_from_json(const json& j) {
  try {
    ExperimentReport r;
    r.name = j.at("name").get<std::string>();
    r.params = j.at("params");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time = j.at("wall_time").get<double>();
    for (const json& c : j.at("claims")) {
      r.claims.push_back({c.at("description").get<std::string>(),
                          c.at("expected").get<double>(),
                          c.at("observed").get<double>(),
                          c.at("tolerance").get<double>(),
                          direction_from_string(c.at("direction").get<std::string>()),
                          c.at("pass").get<bool>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed experiment report: ") + e.what());
  }
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string exact_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string to_csv(const ExperimentReport& r) {
  std::string out = "claim,expected,observed,tolerance,direction,pass\n";
  for (const Claim& c : r.claims) {
    out += csv_quote(c.description) + "," + exact_double(c.expected) + "," +
           exact_double(c.observed) + "," + exact_double(c.tolerance) + "," +
           to_string(c.direction) + "," + (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::vector<Claim> claims_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Claim> out;
  if (!std::getline(in, line) ||
      line != "claim,expected,observed,tolerance,direction,pass")
    throw InputError("CSV report: missing header");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = csv_fields(line);
    if (f.size() != 6)
      throw InputError("CSV report line " + std::to_string(lineno) +
                       ": expected 6 fields");
    try {
      out.push_back({f[0], std::stod(f[1]), std::stod(f[2]), std::stod(f[3]),
                     direction_from_string(f[4]), f[5] == "true"});
    } catch (const std::logic_error&) {
      throw InputError("CSV report line " + std::to_string(lineno) +
                       ": bad number");
    }
  }
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "l1-constants-table", "l1-roots-convergence", "varopoulos-lp3",
      "real-l1-bochnak",    "banach-hilbert",       "quotient-lemma",
      "harris-audit",       "polarization-oracle"};
  return names;
}

std::uint64_t default_seed(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void perturb_expected(ExperimentReport& r, std::size_t index) {
  if (index >= r.claims.size())
    throw InputError("perturb_expected: claim index out of range");
  Claim& c = r.claims[index];
  const double shift = 1.0 + std::abs(c.expected) + std::abs(c.observed) +
                       10.0 * c.tolerance;
  if (c.direction == Direction::AtMost)
    c.expected -= shift;
  else
    c.expected += shift;
  c.pass = evaluate_claim(c);
}

int exit_code(const ExperimentReport& r) { return r.all_pass() ? 0 : 1; }

ExactRational max_over_compositions(int k, int d, long* count) {
  if (k < 0 || d < 1) throw InputError("max_over_compositions: bad k or d");
  ExactRational best(0);
  long n = 0;
  std::vector<int> parts(d, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d - 1) {
      parts[i] = left;
      ++n;
      const ExactRational v = partition_value(Partition{parts});
      if (best < v) best = v;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      parts[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, k);
  if (count) *count = n;
  return best;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

// Runs fn(0..n-1) on a few threads; results are stored by index so the fold
// afterwards does not depend on scheduling.
template <class T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const int workers = std::min(worker_count(), std::max(n, 1));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) {
        try {
          out[static_cast<std::size_t>(i)] = fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

class Params {
 public:
  Params(std::string experiment, const json& given, json defaults)
      : name_(std::move(experiment)), merged_(std::move(defaults)) {
    if (!given.is_object())
      throw InputError(name_ + ": params must be a JSON object");
    for (auto it = given.begin(); it != given.end(); ++it) {
      if (it.key() != "seed" && !merged_.contains(it.key()))
        throw InputError(name_ + ": unknown parameter '" + it.key() + "'");
      merged_[it.key()] = it.value();
    }
  }

  template <class T>
  T get(const std::string& key) const {
    try {
      return merged_.at(key).get<T>();
    } catch (const json::exception&) {
      throw InputError(name_ + ": parameter '" + key + "' has the wrong type");
    }
  }

  int positive(const std::string& key) const {
    const int v = get<int>(key);
    if (v < 1) throw InputError(name_ + ": parameter '" + key + "' must be >= 1");
    return v;
  }

  Exponent exponent(const json& v) const {
    if (v.is_string()) return Exponent::parse(v.get<std::string>());
    if (v.is_number()) return Exponent::finite(v.get<double>());
    throw InputError(name_ + ": exponent must be a number or \"inf\"");
  }

  const json& merged() const { return merged_; }

 private:
  std::string name_;
  json merged_;
};

using Claims = std::vector<Claim>;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Claims l1_constants_table(const Params& pr, std::uint64_t) {
  const int k_max = pr.positive("k_max");
  const int d_max = pr.positive("d_max");
  int mismatches = 0;
  int saturation_mismatches = 0;
  int cases = 0;
  long compositions = 0;
  for (int k = 1; k <= k_max; ++k) {
    const ExactRational saturated =
        partition_value(Partition{std::vector<int>(k, 1)});  // k^k/k!
    for (int d = 1; d <= d_max; ++d) {
      long n = 0;
      const ExactRational brute = max_over_compositions(k, d, &n);
      const ExactRational closed = exact_c_l1(k, d);
      compositions += n;
      ++cases;
      if (!(brute == closed)) ++mismatches;
      if (d >= k && !(closed == saturated)) ++saturation_mismatches;
    }
  }
  Claims out;
  out.push_back(make_claim("exact_c_l1 vs exhaustive search: mismatching (k,d) among " +
                               std::to_string(cases) + " cases (" +
                               std::to_string(compositions) + " compositions)",
                           0, mismatches, 0));
  out.push_back(make_claim("c(k, l1^d) != k^k/k! for d >= k", 0,
                           saturation_mismatches, 0));
  if (k_max >= 2 && d_max >= 2)
    out.push_back(make_claim("c(2, l1^2) = 2", 2.0,
                             exact_c_l1(2, 2).to_double(), 0));
  if (k_max >= 8 && d_max >= 2) {
    const bool exact = exact_c_l1(8, 2) == ExactRational(128, 35);
    out.push_back(make_claim("c(8, l1^2) == 128/35 exactly", 1.0, exact ? 1.0 : 0.0, 0));
  }
  return out;
}

Claims l1_roots_convergence(const Params& pr, std::uint64_t) {
  const auto d_list = pr.get<std::vector<int>>("d_list");
  const auto c_list = pr.get<std::vector<int>>("c_list");
  Claims out;
  out.push_back(make_claim("c(999, l1^3)^(1/999)", 1.01,
                           root_sequence(3, {999})[0].root, 0, Direction::AtMost));
  out.push_back(make_claim("c(10000, l1^2)^(1/10000)", 1.002,
                           root_sequence(2, {10000})[0].root, 0, Direction::AtMost));
  // Stirling: c(dc, l1^d) ~ (2 pi c)^{d/2} (2 pi d c)^{-1/2}.
  const double stirling = 1.5 * std::log(2.0 * std::numbers::pi * 333) -
                          0.5 * std::log(2.0 * std::numbers::pi * 999);
  out.push_back(make_claim("log c(999, l1^3) vs Stirling estimate", stirling,
                           exact_c_l1(999, 3).log(), 1e-2));
  for (int d : d_list) {
    if (d < 1) throw InputError("l1-roots-convergence: d must be >= 1");
    std::vector<int> ks;
    for (int c : c_list) {
      if (c < 1) throw InputError("l1-roots-convergence: c must be >= 1");
      ks.push_back(d * c);
    }
    std::sort(ks.begin(), ks.end());
    const auto seq = root_sequence(d, ks);
    int increases = 0;
    double lowest = seq.empty() ? 1.0 : seq.front().root;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      lowest = std::min(lowest, seq[i].root);
      if (i > 0 && seq[i].root > seq[i - 1].root) ++increases;
    }
    out.push_back(make_claim("d=" + std::to_string(d) +
                                 ": increases along k = d c of the k-th roots",
                             0, increases, 0));
    out.push_back(make_claim("d=" + std::to_string(d) + ": smallest k-th root", 1.0,
                             lowest, 0, Direction::AtLeast));
  }
  return out;
}

OptimConfig config_from(const Params& pr, std::uint64_t seed) {
  OptimConfig cfg;
  cfg.starts = pr.positive("starts");
  cfg.seed = seed;
  cfg.threads = worker_count();
  return cfg;
}

Claims varopoulos_lp3(const Params& pr, std::uint64_t seed) {
  std::vector<Exponent> ps;
  const json& pj = pr.merged().at("p");
  if (pj.is_array()) {
    for (const json& v : pj) ps.push_back(pr.exponent(v));
  } else {
    ps.push_back(pr.exponent(pj));
  }
  const HomogeneousPolynomial P = varopoulos();
  const OptimConfig cfg = config_from(pr, seed);
  Claims out;
  out.push_back(make_claim("spectral norm of the coefficient matrix", 2.0,
                           spectral_norm_quadratic(P, 3), 1e-10));
  for (const Exponent& p : ps) {
    const SpaceSpec spec(3, p, Field::Complex);
    const std::string tag = "p=" + p.to_string() + ": ";
    const NormEstimate poly = estimate_poly_norm(P, spec, cfg);
    const std::vector<BlockTuple> seeds{BlockTuple({{poly.witness[0].vector, 2}})};
    if (p.is_infinite()) {
      const NormEstimate multi = estimate_multilinear_norm(P, spec, cfg, seeds);
      out.push_back(make_claim(tag + "poly norm", 5.0, poly.value, 1e-4));
      out.push_back(make_claim(tag + "poly norm upper", 5.0, poly.value, 1e-6,
                               Direction::AtMost));
      out.push_back(make_claim(tag + "multilinear norm", 6.0, multi.value, 1e-4,
                               Direction::AtLeast));
      out.push_back(make_claim(tag + "ratio multilinear / 5", 6.0 / 5.0,
                               multi.value / 5.0, 1e-3, Direction::AtLeast));
      continue;
    }
    if (p.value() < 2.0)
      throw InputError("varopoulos-lp3: p must be >= 2");
    const NormEstimate blocked =
        estimate_blocked_norm(P, Partition{{1, 1}}, spec, cfg,
                              std::vector<BlockTuple>{expand_to_multilinear(seeds[0])});
    const double upper = lp3_interpolation_upper_bound(p);
    out.push_back(make_claim(tag + "blocked (1,1) norm", 6.0 / std::pow(3.0, 2.0 * p.reciprocal()),
                             blocked.value, 1e-3, Direction::AtLeast));
    out.push_back(make_claim(tag + "blocked / interpolation bound", lp3_lower_bound(p),
                             blocked.value / upper, 1e-3, Direction::AtLeast));
    out.push_back(make_claim(tag + "poly norm vs interpolation bound " + fmt(upper),
                             upper, poly.value, 1e-6, Direction::AtMost));
  }
  // Sampling check that c(2, l_inf^2) = 1 over C.
  const int count = pr.get<int>("linf2_quadratics");
  if (count < 0) throw InputError("varopoulos-lp3: linf2_quadratics must be >= 0");
  if (count > 0) {
    const SpaceSpec plane(2, Exponent::infinity(), Field::Complex);
    OptimConfig inner = cfg;
    inner.threads = 1;
    const auto ratios = parallel_map<double>(count, [&](int t) {
      const std::uint64_t s = mix(seed + 7000u + static_cast<std::uint64_t>(t));
      const HomogeneousPolynomial Q = random_polynomial(2, 2, Field::Complex, s);
      OptimConfig c = inner;
      c.seed = s;
      const NormEstimate poly = estimate_poly_norm(Q, plane, c);
      return estimate_multilinear_norm(Q, plane, c).value / poly.value;
    });
    double worst = 0.0;
    for (double r : ratios) worst = std::max(worst, r);
    out.push_back(make_claim(std::to_string(count) +
                                 " quadratics on l_inf^2: max multilinear / poly estimate",
                             1.0, worst, 1e-6, Direction::AtMost));
  }
  return out;
}

Claims real_l1_bochnak(const Params& pr, std::uint64_t seed) {
  const auto ms = pr.get<std::vector<int>>("m_list");
  const OptimConfig cfg = config_from(pr, seed);
  Claims out;
  for (int m : ms) {
    if (m < 1) throw InputError("real-l1-bochnak: m must be >= 1");
    const std::string tag = "m=" + std::to_string(m) + ": ";
    const HomogeneousPolynomial P = real_l1_example(m);
    const SpaceSpec spec(2, Exponent::finite(1.0), Field::Real);
    const BochnakReport b = estimate_bochnak_ratio(P, spec, cfg);
    Vector w(2);
    w << Scalar(0.5, 0.0), Scalar(0.0, 0.5);
    const double at_w = std::abs(evaluate(complexify(P), w));
    out.push_back(make_claim(tag + "real l1^2 norm", std::ldexp(1.0, -6 * m),
                             b.real_norm.value, 1e-8));
    out.push_back(make_claim(tag + "|P~(1/2, i/2)|", std::ldexp(1.0, -(4 * m + 1)),
                             at_w, 1e-12));
    out.push_back(make_claim(tag + "Bochnak ratio", std::ldexp(1.0, 2 * m - 1),
                             b.ratio, 1e-3, Direction::AtLeast));
  }
  return out;
}

Claims banach_hilbert(const Params& pr, std::uint64_t seed) {
  const int n = pr.positive("n");
  const int trials = pr.positive("trials");
  OptimConfig cfg;
  cfg.starts = pr.positive("starts");
  cfg.spectral_shortcut = false;
  const SpaceSpec spec(n, Exponent::finite(2.0), Field::Complex);
  struct Row {
    double poly_gap = 0.0, multi_gap = 0.0, ratio_gap = 0.0;
  };
  const auto rows = parallel_map<Row>(trials, [&](int t) {
    const HomogeneousPolynomial P =
        random_polynomial(2, n, Field::Complex, mix(seed + static_cast<std::uint64_t>(t)));
    OptimConfig c = cfg;
    c.seed = mix(seed ^ static_cast<std::uint64_t>(t));
    const double sigma = spectral_norm_quadratic(P, n);
    const NormEstimate poly = estimate_poly_norm(P, spec, c);
    const NormEstimate multi = estimate_multilinear_norm(
        P, spec, c, std::vector<BlockTuple>{BlockTuple({{poly.witness[0].vector, 2}})});
    return Row{std::abs(poly.value - sigma) / sigma,
               std::abs(multi.value - sigma) / sigma,
               std::abs(multi.value / poly.value - 1.0)};
  });
  Row worst;
  for (const Row& r : rows) {
    worst.poly_gap = std::max(worst.poly_gap, r.poly_gap);
    worst.multi_gap = std::max(worst.multi_gap, r.multi_gap);
    worst.ratio_gap = std::max(worst.ratio_gap, r.ratio_gap);
  }
  return {make_claim("max relative |poly - spectral|", 0, worst.poly_gap, 1e-6),
          make_claim("max relative |multilinear - spectral|", 0, worst.multi_gap, 1e-6),
          make_claim("max |ratio - 1|", 0, worst.ratio_gap, 1e-6)};
}

Claims quotient_lemma(const Params& pr, std::uint64_t seed) {
  const SpaceSpec spec(pr.positive("dim"), pr.exponent(pr.merged().at("p")),
                       field_from_string(pr.get<std::string>("field")));
  const double eta = pr.get<double>("eta");
  const double eps = pr.get<double>("epsilon");
  const int lifts = pr.positive("lifts");
  const int quadratics = pr.get<int>("quadratics");
  const int cubics = pr.get<int>("cubics");
  const int samples = pr.positive("samples");
  if (quadratics < 0 || cubics < 0)
    throw InputError("quotient-lemma: polynomial counts must be >= 0");

  const QuotientMap Q = build_quotient(spec, eta, eps, seed);
  Claims out;
  double unit_gap = 0.0;
  for (const Vector& h : Q.net) unit_gap = std::max(unit_gap, std::abs(norm(h, spec) - 1.0));
  out.push_back(make_claim("net of " + std::to_string(Q.d()) +
                               " points: max | ||h_j|| - 1 |",
                           0, unit_gap, 1e-12));
  out.push_back(make_claim("fresh covering radius", eta,
                           covering_radius(spec, Q.net, kNetSamples, mix(seed + 1)), 0,
                           Direction::AtMost));

  std::mt19937_64 rng(mix(seed + 2));
  std::normal_distribution<double> gauss(0.0, 1.0);
  double ratio = 0.0, residual = 0.0;
  int decay_failures = 0;
  for (int i = 0; i < lifts; ++i) {
    // Random scale so lifts are exercised off the unit sphere too.
    const double scale = std::exp(gauss(rng));
    const Vector x = scale * random_unit_vector(spec, rng);
    const Preimage pre = greedy_preimage(Q, x);
    ratio = std::max(ratio, pre.z.l1_norm() / norm(x, spec));
    residual = std::max(residual, pre.residual);
    if (!pre.geometric_decay) ++decay_failures;
  }
  out.push_back(make_claim("max ||z||_1 / ||x|| over lifts", 1.0 + eps, ratio, 0,
                           Direction::AtMost));
  out.push_back(make_claim("max lift residual", 1e-12, residual, 0, Direction::AtMost));
  out.push_back(make_claim("lifts violating residual < eta^j ||x||", 0, decay_failures, 0));

  auto batch = [&](int k, int count) {
    struct Row {
      int violations = 0;
      double slack = 0.0, chain = 0.0;
    };
    const auto rows = parallel_map<Row>(count, [&](int t) {
      const std::uint64_t s = mix(seed + 1000u * static_cast<std::uint64_t>(k) +
                                  static_cast<std::uint64_t>(t));
      const HomogeneousPolynomial P = random_polynomial(k, spec.dim, spec.field, s);
      OptimConfig cfg;
      cfg.seed = s;
      const TransferReport rep = verify_transfer_bound(P, Q, cfg, samples, mix(s));
      return Row{rep.violations, rep.max_slack, rep.max_chain_error};
    });
    Row worst;
    for (const Row& r : rows) {
      worst.violations += r.violations;
      worst.slack = std::max(worst.slack, r.slack);
      worst.chain = std::max(worst.chain, r.chain);
    }
    const std::string tag = "degree " + std::to_string(k) + ", " +
                            std::to_string(count) + " polynomials: ";
    out.push_back(make_claim(tag + "transfer bound violations", 0, worst.violations, 0));
    out.push_back(make_claim(tag + "max |P^v(x)| / bound", 1.0, worst.slack, 0,
                             Direction::AtMost));
    out.push_back(make_claim(tag + "max chain identity error", 0, worst.chain, 1e-9));
  };
  if (quadratics > 0) batch(2, quadratics);
  if (cubics > 0) batch(3, cubics);
  return out;
}

Claims harris_audit(const Params& pr, std::uint64_t seed) {
  const int count = pr.get<int>("quadratics");
  const int n = pr.positive("n");
  if (count < 0) throw InputError("harris-audit: quadratics must be >= 0");
  OptimConfig cfg = config_from(pr, seed);
  cfg.spectral_shortcut = false;
  Claims out;

  const std::vector<Partition> quad_parts{Partition{{2}}, Partition{{1, 1}}};
  {
    const HomogeneousPolynomial P = varopoulos();
    const SpaceSpec spec(3, Exponent::infinity(), Field::Complex);
    double worst = 0.0;
    for (const Partition& parts : quad_parts) {
      const double b = estimate_blocked_norm(P, parts, spec, cfg).value;
      worst = std::max(worst, b / (harris_bound(parts).to_double() * 5.0));
    }
    out.push_back(make_claim("Varopoulos on l_inf^3: max blocked / (harris * 5)", 1.0,
                             worst, 1e-9, Direction::AtMost));
  }

  OptimConfig inner = cfg;
  inner.threads = 1;
  const SpaceSpec spec(n, Exponent::finite(2.0), Field::Complex);
  const auto ratios = parallel_map<double>(count, [&](int t) {
    const HomogeneousPolynomial P =
        random_polynomial(2, n, Field::Complex, mix(seed + static_cast<std::uint64_t>(t)));
    const double sigma = spectral_norm_quadratic(P, n);
    double worst = 0.0;
    for (const Partition& parts : quad_parts) {
      const double b = estimate_blocked_norm(P, parts, spec, inner).value;
      worst = std::max(worst, b / (harris_bound(parts).to_double() * sigma));
    }
    return worst;
  });
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, r);
  out.push_back(make_claim(std::to_string(count) +
                               " quadratics on l_2: max blocked / (harris * spectral)",
                           1.0, worst, 1e-9, Direction::AtMost));
  return out;
}

Claims polarization_oracle(const Params& pr, std::uint64_t seed) {
  const int trials = pr.positive("trials");
  const int k_max = pr.positive("k_max");
  const int n_max = pr.positive("n_max");
  if (k_max > kMaxSignSumDegree)
    throw InputError("polarization-oracle: k_max exceeds the sign-sum budget");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0, diag = 0.0, sym = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k_max));
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max));
    const Field field = t % 2 == 0 ? Field::Real : Field::Complex;
    const HomogeneousPolynomial P = random_polynomial(k, n, field, rng());
    std::vector<Vector> args;
    for (int i = 0; i < k; ++i) {
      Vector x(n);
      for (int j = 0; j < n; ++j)
        x[j] = Scalar(gauss(rng), field == Field::Complex ? gauss(rng) : 0.0);
      args.push_back(x);
    }
    const Scalar blocked = polarize_blocked(P, BlockTuple::from_vectors(args));
    const Scalar sign = polarize_sign_sum(P, args);
    worst = std::max(worst, std::abs(sign - blocked) / (1.0 + std::abs(blocked)));
    std::vector<Vector> rev(args.rbegin(), args.rend());
    const Scalar reversed = polarize_blocked(P, BlockTuple::from_vectors(rev));
    sym = std::max(sym, std::abs(reversed - blocked) / (1.0 + std::abs(blocked)));
    const Scalar px = evaluate(P, args[0]);
    const Scalar on_diag = polarize_blocked(P, BlockTuple({{args[0], k}}));
    diag = std::max(diag, std::abs(on_diag - px) / (1.0 + std::abs(px)));
  }
  return {make_claim("max |sign-sum - blocked| / (1 + |blocked|)", 0, worst, 1e-9),
          make_claim("max permutation asymmetry", 0, sym, 1e-9),
          make_claim("max |P^v(x,...,x) - P(x)| / (1 + |P(x)|)", 0, diag, 1e-9)};
}

struct Entry {
  json defaults;
  std::function<Claims(const Params&, std::uint64_t)> run;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg{
      {"l1-constants-table", {{{"k_max", 12}, {"d_max", 6}}, l1_constants_table}},
      {"l1-roots-convergence",
       {{{"d_list", {2, 3}}, {"c_list", {1, 2, 5, 10, 100, 1000, 5000}}},
        l1_roots_convergence}},
      {"varopoulos-lp3",
       {{{"p", json::array({"inf", 3, 4, 8})}, {"starts", 200}, {"linf2_quadratics", 20}},
        varopoulos_lp3}},
      {"real-l1-bochnak", {{{"m_list", {1, 2}}, {"starts", 200}}, real_l1_bochnak}},
      {"banach-hilbert", {{{"n", 4}, {"trials", 50}, {"starts", 8}}, banach_hilbert}},
      {"quotient-lemma",
       {{{"p", 2}, {"dim", 2}, {"field", "real"}, {"eta", 0.1}, {"epsilon", 0.2},
         {"lifts", 100}, {"quadratics", 20}, {"cubics", 20}, {"samples", 8}},
        quotient_lemma}},
      {"harris-audit",
       {{{"quadratics", 20}, {"n", 3}, {"starts", 20}}, harris_audit}},
      {"polarization-oracle",
       {{{"trials", 200}, {"k_max", 6}, {"n_max", 4}}, polarization_oracle}},
  };
  return reg;
}

}  // namespace

ExperimentReport run_experiment(const std::string& name, const json& params) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw InputError("unknown experiment '" + name + "'");
  const Params pr(name, params, it->second.defaults);

  ExperimentReport r;
  r.name = name;
  r.seed = pr.merged().contains("seed") ? pr.get<std::uint64_t>("seed")
                                        : default_seed(name);
  r.params = pr.merged();
  r.params.erase("seed");
  const auto t0 = std::chrono::steady_clock::now();
  r.claims = it->second.run(pr, r.seed);
  r.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace cpolar
