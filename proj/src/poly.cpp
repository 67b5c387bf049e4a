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

#include "cpolar/poly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace cpolar {

int total_degree(const MultiIndex& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

namespace {

void enumerate_indices(int remaining, int pos, MultiIndex& cur,
                       std::vector<MultiIndex>& out) {
  const int n = static_cast<int>(cur.size());
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur[pos] = a;
    enumerate_indices(remaining - a, pos + 1, cur, out);
  }
}

bool has_imaginary(const Matrix& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      if (M(i, j).imag() != 0.0) return true;
  return false;
}

// Accumulates a * b into out (keys are concatenation-free: same length).
void multiply_into(const TermMap& a, const TermMap& b, Scalar scale,
                   TermMap& out) {
  MultiIndex key;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      key.resize(ka.size());
      for (std::size_t i = 0; i < ka.size(); ++i) key[i] = ka[i] + kb[i];
      out[key] += scale * ca * cb;
    }
  }
}

// x^alpha from a table of powers pw[j][a] = x_j^a.
Scalar monomial_value(const MultiIndex& alpha,
                      const std::vector<std::vector<Scalar>>& pw) {
  Scalar v(1.0, 0.0);
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (alpha[j] != 0) v *= pw[j][alpha[j]];
  return v;
}

std::vector<std::vector<Scalar>> power_table(const Vector& x, int k) {
  std::vector<std::vector<Scalar>> pw(x.size(), std::vector<Scalar>(k + 1));
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    pw[j][0] = 1.0;
    for (int a = 1; a <= k; ++a) pw[j][a] = pw[j][a - 1] * x[j];
  }
  return pw;
}

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  // Exact while the running value stays below 2^53.
  double v = 1.0;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return std::round(v);
}

}  // namespace

std::vector<MultiIndex> multi_indices(int k, int n) {
  if (k < 0 || n < 1) throw InputError("multi_indices: need k >= 0, n >= 1");
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  enumerate_indices(k, 0, cur, out);
  return out;
}

HomogeneousPolynomial::HomogeneousPolynomial(int degree, int dim, Field field,
                                             TermMap terms)
    : degree_(degree), dim_(dim), field_(field), terms_(std::move(terms)) {
  if (degree_ < 0) throw InputError("polynomial degree must be >= 0");
  if (dim_ < 1) throw InputError("polynomial dimension must be >= 1");
  for (auto it = terms_.begin(); it != terms_.end();) {
    const MultiIndex& alpha = it->first;
    if (static_cast<int>(alpha.size()) != dim_)
      throw InputError("multi-index length does not match dimension");
    if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
      throw InputError("negative exponent in multi-index");
    if (total_degree(alpha) != degree_)
      throw InputError("multi-index total degree " +
                       std::to_string(total_degree(alpha)) +
                       " does not match polynomial degree " +
                       std::to_string(degree_));
    if (field_ == Field::Real && it->second.imag() != 0.0)
      throw InputError("real polynomial with complex coefficient");
    if (it->second == Scalar(0.0, 0.0))
      it = terms_.erase(it);
    else
      ++it;
  }
}

Scalar HomogeneousPolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Scalar(0.0, 0.0) : it->second;
}

double HomogeneousPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void prune_terms(TermMap& terms, double rel) {
  double m = 0.0;
  for (const auto& [alpha, c] : terms) m = std::max(m, std::abs(c));
  const double cut = rel * m;
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) < cut || it->second == Scalar(0.0, 0.0))
      it = terms.erase(it);
    else
      ++it;
  }
}

Scalar evaluate(const HomogeneousPolynomial& P, const Vector& x) {
  if (x.size() != P.dim())
    throw InputError("evaluate: vector length " + std::to_string(x.size()) +
                     " does not match polynomial dim " +
                     std::to_string(P.dim()));
  const auto pw = power_table(x, P.degree());
  Scalar s(0.0, 0.0);
  for (const auto& [alpha, c] : P.terms()) s += c * monomial_value(alpha, pw);
  return s;
}

Vector gradient(const HomogeneousPolynomial& P, const Vector& x) {
  if (x.size() != P.dim())
    throw InputError("gradient: vector length does not match polynomial dim");
  Vector g = Vector::Zero(P.dim());
  if (P.degree() == 0) return g;
  const auto pw = power_table(x, P.degree());
  MultiIndex beta;
  for (const auto& [alpha, c] : P.terms()) {
    for (int j = 0; j < P.dim(); ++j) {
      if (alpha[j] == 0) continue;
      beta = alpha;
      --beta[j];
      g[j] += c * static_cast<double>(alpha[j]) * monomial_value(beta, pw);
    }
  }
  return g;
}

HomogeneousPolynomial compose_linear(const HomogeneousPolynomial& P,
                                     const Matrix& M) {
  if (M.rows() != P.dim())
    throw InputError("compose_linear: matrix has " + std::to_string(M.rows()) +
                     " rows, polynomial has dim " + std::to_string(P.dim()));
  if (M.cols() < 1) throw InputError("compose_linear: matrix has no columns");
  const int n = P.dim();
  const int m = static_cast<int>(M.cols());
  const int k = P.degree();
  const Field field = (P.field() == Field::Complex || has_imaginary(M))
                          ? Field::Complex
                          : Field::Real;

  // Expand over sorted variable multisets, which stay short when m is large,
  // and convert to exponent vectors once at the end.
  using Multiset = std::vector<int>;
  using Expansion = std::map<Multiset, Scalar>;
  auto times = [](const Expansion& a, const Expansion& b) {
    Expansion r;
    Multiset merged;
    for (const auto& [sa, ca] : a)
      for (const auto& [sb, cb] : b) {
        merged.resize(sa.size() + sb.size());
        std::merge(sa.begin(), sa.end(), sb.begin(), sb.end(), merged.begin());
        r[merged] += ca * cb;
      }
    return r;
  };

  std::vector<int> need(n, 0);
  for (const auto& [alpha, c] : P.terms())
    for (int j = 0; j < n; ++j) need[j] = std::max(need[j], alpha[j]);

  // row_pow[j][a] = (sum_l M_jl z_l)^a.
  std::vector<std::vector<Expansion>> row_pow(n);
  for (int j = 0; j < n; ++j) {
    Expansion linear;
    for (int l = 0; l < m; ++l)
      if (M(j, l) != Scalar(0.0, 0.0)) linear[{l}] = M(j, l);
    row_pow[j].resize(need[j] + 1);
    row_pow[j][0][{}] = 1.0;
    for (int a = 1; a <= need[j]; ++a)
      row_pow[j][a] = times(row_pow[j][a - 1], linear);
  }

  Expansion sum;
  for (const auto& [alpha, c] : P.terms()) {
    Expansion acc{{{}, c}};
    for (int j = 0; j < n; ++j) {
      if (alpha[j] == 0) continue;
      acc = times(acc, row_pow[j][alpha[j]]);
    }
    for (const auto& [ms, v] : acc) sum[ms] += v;
  }

  TermMap out;
  for (const auto& [ms, v] : sum) {
    MultiIndex beta(m, 0);
    for (int l : ms) ++beta[l];
    out.emplace_hint(out.end(), std::move(beta), v);
  }
  prune_terms(out);
  if (field == Field::Real)
    for (auto& [beta, v] : out) v = Scalar(v.real(), 0.0);
  return HomogeneousPolynomial(k, m, field, std::move(out));
}

HomogeneousPolynomial product(const HomogeneousPolynomial& P,
                              const HomogeneousPolynomial& Q) {
  if (P.dim() != Q.dim()) throw InputError("product: dimension mismatch");
  if (P.field() != Q.field()) throw InputError("product: field mismatch");
  TermMap out;
  multiply_into(P.terms(), Q.terms(), 1.0, out);
  prune_terms(out);
  return HomogeneousPolynomial(P.degree() + Q.degree(), P.dim(), P.field(),
                               std::move(out));
}

HomogeneousPolynomial complexify(const HomogeneousPolynomial& P) {
  if (P.field() != Field::Real)
    throw InputError("complexify: polynomial is already complex");
  return HomogeneousPolynomial(P.degree(), P.dim(), Field::Complex, P.terms());
}

HomogeneousPolynomial real_l1_example(int m) {
  if (m < 1) throw InputError("real_l1_example: m must be >= 1");
  TermMap terms;
  for (int j = 0; j <= 2 * m; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    // (xy)^{2m} * y^{2j} x^{4m-2j}
    MultiIndex alpha{2 * m + 4 * m - 2 * j, 2 * m + 2 * j};
    terms[alpha] = sign * binomial(4 * m, 2 * j);
  }
  return HomogeneousPolynomial(8 * m, 2, Field::Real, std::move(terms));
}

HomogeneousPolynomial varopoulos() {
  TermMap t;
  t[{2, 0, 0}] = 1.0;
  t[{0, 2, 0}] = 1.0;
  t[{0, 0, 2}] = 1.0;
  t[{1, 1, 0}] = -2.0;
  t[{1, 0, 1}] = -2.0;
  t[{0, 1, 1}] = -2.0;
  return HomogeneousPolynomial(2, 3, Field::Complex, std::move(t));
}

HomogeneousPolynomial random_polynomial(int k, int n, Field field,
                                        std::uint64_t seed) {
  if (k < 0 || n < 1)
    throw InputError("random_polynomial: need k >= 0 and n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  TermMap terms;
  for (const MultiIndex& alpha : multi_indices(k, n)) {
    const double re = gauss(rng);
    const double im = field == Field::Complex ? gauss(rng) : 0.0;
    terms[alpha] = Scalar(re, im);
  }
  return HomogeneousPolynomial(k, n, field, std::move(terms));
}

HomogeneousPolynomial monomial(const MultiIndex& alpha, Field field,
                               Scalar c) {
  TermMap t;
  t[alpha] = c;
  return HomogeneousPolynomial(total_degree(alpha),
                               static_cast<int>(alpha.size()), field,
                               std::move(t));
}

nlohmann::json to_json(const HomogeneousPolynomial& P) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [alpha, c] : P.terms())
    terms.push_back({{"alpha", alpha}, {"re", c.real()}, {"im", c.imag()}});
  return {{"field", to_string(P.field())},
          {"degree", P.degree()},
          {"dim", P.dim()},
          {"terms", terms}};
}

namespace {

// Term index of a semantic error, or -1 for document-level errors.
struct TermError {
  std::string message;
  int term;
};

HomogeneousPolynomial build_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& msg, int term) {
    throw TermError{msg, term};
  };
  if (!j.is_object()) fail("polynomial document must be a JSON object", -1);
  for (const char* key : {"field", "degree", "dim", "terms"})
    if (!j.contains(key)) fail(std::string("missing key '") + key + "'", -1);
  if (!j["field"].is_string()) fail("'field' must be a string", -1);
  if (!j["degree"].is_number_integer()) fail("'degree' must be an integer", -1);
  if (!j["dim"].is_number_integer()) fail("'dim' must be an integer", -1);
  if (!j["terms"].is_array()) fail("'terms' must be an array", -1);

  const std::string fs = j["field"].get<std::string>();
  if (fs != "real" && fs != "complex")
    fail("'field' must be \"real\" or \"complex\"", -1);
  const Field field = field_from_string(fs);
  const int degree = j["degree"].get<int>();
  const int dim = j["dim"].get<int>();
  if (degree < 0) fail("'degree' must be >= 0", -1);
  if (dim < 1) fail("'dim' must be >= 1", -1);

  TermMap terms;
  int idx = 0;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("alpha") || !t["alpha"].is_array())
      fail("term must be an object with an 'alpha' array", idx);
    MultiIndex alpha;
    for (const auto& a : t["alpha"]) {
      if (!a.is_number_integer()) fail("exponents must be integers", idx);
      alpha.push_back(a.get<int>());
    }
    if (static_cast<int>(alpha.size()) != dim)
      fail("alpha has length " + std::to_string(alpha.size()) +
               ", expected dim " + std::to_string(dim),
           idx);
    if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
      fail("negative exponent", idx);
    if (total_degree(alpha) != degree)
      fail("|alpha| = " + std::to_string(total_degree(alpha)) +
               " does not match degree " + std::to_string(degree),
           idx);
    double re = 0.0;
    double im = 0.0;
    if (t.contains("re")) {
      if (!t["re"].is_number()) fail("'re' must be a number", idx);
      re = t["re"].get<double>();
    }
    if (t.contains("im")) {
      if (!t["im"].is_number()) fail("'im' must be a number", idx);
      im = t["im"].get<double>();
    }
    if (field == Field::Real && im != 0.0)
      fail("nonzero imaginary part in a real polynomial", idx);
    if (terms.count(alpha)) fail("duplicate multi-index", idx);
    terms[alpha] = Scalar(re, im);
    ++idx;
  }
  return HomogeneousPolynomial(degree, dim, field, std::move(terms));
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line holding the i-th "alpha" key; a textual anchor for term errors.
int line_of_term(const std::string& text, int term) {
  if (term < 0) return 0;
  std::size_t pos = 0;
  for (int i = 0; i <= term; ++i) {
    pos = text.find("\"alpha\"", i == 0 ? 0 : pos + 1);
    if (pos == std::string::npos) return 0;
  }
  return line_of_offset(text, pos);
}

}  // namespace

HomogeneousPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    return build_from_json(j);
  } catch (const TermError& e) {
    std::string msg = e.message;
    if (e.term >= 0) msg = "term " + std::to_string(e.term) + ": " + msg;
    throw PolynomialParseError(msg, 0);
  }
}

HomogeneousPolynomial parse_polynomial(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw PolynomialParseError(
        "line " + std::to_string(line) + ": invalid JSON: " + e.what(), line);
  }
  try {
    return build_from_json(j);
  } catch (const TermError& e) {
    const int line = line_of_term(text, e.term);
    std::string msg = e.message;
    if (e.term >= 0) msg = "term " + std::to_string(e.term) + ": " + msg;
    if (line > 0) msg = "line " + std::to_string(line) + ": " + msg;
    throw PolynomialParseError(msg, line);
  }
}

HomogeneousPolynomial load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PolynomialParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_polynomial(ss.str());
}

}  // namespace cpolar
