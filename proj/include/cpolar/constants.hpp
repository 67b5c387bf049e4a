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

#include <compare>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cpolar/spaces.hpp"

namespace cpolar {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long num, long den = 1);  // NOLINT(runtime/explicit)
  explicit ExactRational(mpq_class q);

  /// Parses "num/den" or "num".
  static ExactRational parse(const std::string& s);

  const mpq_class& raw() const { return q_; }
  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }

  /// "num/den", denominator always printed.
  std::string fraction() const;
  /// Scientific decimal with `digits` significant digits.
  std::string decimal(int digits = 15) const;
  /// Nearest double; overflows to inf for huge values.
  double to_double() const { return q_.get_d(); }
  /// Natural log of a positive value from the big-integer logs of numerator
  /// and denominator.
  double log() const;

  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
    return ExactRational(mpq_class(a.q_ * b.q_));
  }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a,
                                          const ExactRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

/// Parts (k_1, ..., k_d), nonnegative, summing to degree().
struct Partition {
  std::vector<int> parts;

  int degree() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// (k_1!...k_d!/k!) * k^k / (k_1^{k_1}...k_d^{k_d}) with 0^0 = 1.
ExactRational partition_value(const Partition& pt);

/// Complex l_1^d polarization constant: partition_value of the balanced
/// partition.
ExactRational exact_c_l1(int k, int d);

/// k = d c + r: (c+1) repeated r times then c repeated d - r times.
Partition balanced_partition(int k, int d);

struct RootEntry {
  int k;
  double root;  // exact_c_l1(k, d)^{1/k}
};

std::vector<RootEntry> root_sequence(int d, const std::vector<int>& ks);

/// Mixed polarization bound for blocks of positive multiplicity.
ExactRational harris_bound(const Partition& parts);

/// (6/5)^{1-2/p}, p >= 2.
double lp3_lower_bound(Exponent p);

/// 2^{2/p} 5^{1-2/p}, p >= 2.
double lp3_interpolation_upper_bound(Exponent p);

}  // namespace cpolar
