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

#include "cpolar/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cpolar/errors.hpp"

namespace cpolar {

ExactRational::ExactRational(long num, long den) {
  if (den == 0) throw InputError("ExactRational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

ExactRational::ExactRational(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw InputError("ExactRational: zero denominator");
  q_.canonicalize();
}

ExactRational ExactRational::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw InputError("cannot parse rational '" + s + "'");
  return ExactRational(std::move(q));
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.q_ == 0) throw InputError("ExactRational: division by zero");
  return ExactRational(mpq_class(a.q_ / b.q_));
}

std::string ExactRational::fraction() const {
  return numerator() + "/" + denominator();
}

std::string ExactRational::decimal(int digits) const {
  if (digits < 1) throw InputError("decimal: need at least one digit");
  if (q_ == 0) return "0";
  // Enough binary precision for the requested decimal digits plus guard.
  mpf_class f(q_, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  char* buf = nullptr;
  gmp_asprintf(&buf, "%.*Fe", digits - 1, f.get_mpf_t());
  std::string out(buf);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(buf, out.size() + 1);
  return out;
}

namespace {

double log_of(const mpz_class& z) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

}  // namespace

double ExactRational::log() const {
  if (q_ <= 0) throw InputError("ExactRational::log: value must be positive");
  return log_of(q_.get_num()) - log_of(q_.get_den());
}

int Partition::degree() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

ExactRational partition_value(const Partition& pt) {
  if (std::any_of(pt.parts.begin(), pt.parts.end(), [](int p) { return p < 0; }))
    throw InputError("partition parts must be nonnegative");
  const int k = pt.degree();
  if (k == 0) return ExactRational(1);

  mpz_class num;
  mpz_class den;
  mpz_class t;
  mpz_ui_pow_ui(num.get_mpz_t(), k, k);
  mpz_fac_ui(den.get_mpz_t(), k);
  for (int part : pt.parts) {
    if (part == 0) continue;  // 0! = 0^0 = 1
    mpz_fac_ui(t.get_mpz_t(), part);
    num *= t;
    mpz_ui_pow_ui(t.get_mpz_t(), part, part);
    den *= t;
  }
  return ExactRational(mpq_class(num, den));
}

Partition balanced_partition(int k, int d) {
  if (k < 1 || d < 1) throw InputError("balanced_partition: need k, d >= 1");
  const int c = k / d;
  const int r = k % d;
  Partition pt;
  pt.parts.assign(r, c + 1);
  pt.parts.insert(pt.parts.end(), d - r, c);
  return pt;
}

ExactRational exact_c_l1(int k, int d) {
  return partition_value(balanced_partition(k, d));
}

std::vector<RootEntry> root_sequence(int d, const std::vector<int>& ks) {
  std::vector<RootEntry> out;
  out.reserve(ks.size());
  for (int k : ks) {
    if (k < 1) throw InputError("root_sequence: every k must be >= 1");
    const double lg = exact_c_l1(k, d).log();
    out.push_back({k, std::exp(lg / k)});
  }
  return out;
}

ExactRational harris_bound(const Partition& parts) {
  if (parts.parts.empty())
    throw InputError("harris_bound: need at least one block");
  if (std::any_of(parts.parts.begin(), parts.parts.end(),
                  [](int p) { return p < 1; }))
    throw InputError("harris_bound: block multiplicities must be positive");
  return partition_value(parts);
}

namespace {

double two_over_p(Exponent p, const char* who) {
  if (!p.is_infinite() && p.value() < 2.0)
    throw InputError(std::string(who) + ": p must be >= 2");
  return 2.0 * p.reciprocal();
}

}  // namespace

double lp3_lower_bound(Exponent p) {
  const double t = two_over_p(p, "lp3_lower_bound");
  return std::pow(6.0 / 5.0, 1.0 - t);
}

double lp3_interpolation_upper_bound(Exponent p) {
  const double t = two_over_p(p, "lp3_interpolation_upper_bound");
  return std::pow(2.0, t) * std::pow(5.0, 1.0 - t);
}

}  // namespace cpolar
