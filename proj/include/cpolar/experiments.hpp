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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cpolar/constants.hpp"
#include "json.hpp"

namespace cpolar {

/// TwoSided: |observed - expected| <= tolerance.
/// AtLeast:  observed >= expected - tolerance.
/// AtMost:   observed <= expected + tolerance.
enum class Direction { TwoSided, AtLeast, AtMost };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

struct Claim {
  std::string description;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  Direction direction = Direction::TwoSided;
  bool pass = false;

  friend bool operator==(const Claim&, const Claim&) = default;
};

/// Builds a claim with `pass` evaluated from the other fields.
Claim make_claim(std::string description, double expected, double observed,
                 double tolerance, Direction direction = Direction::TwoSided);
bool evaluate_claim(const Claim& c);

struct ExperimentReport {
  std::string name;
  /// Effective parameters, defaults filled in.
  nlohmann::json params;
  std::vector<Claim> claims;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds

  bool all_pass() const;
  friend bool operator==(const ExperimentReport&,
                         const ExperimentReport&) = default;
};

nlohmann::json to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const nlohmann::json& j);

/// Columns: claim, expected, observed, tolerance, direction, pass.
std::string to_csv(const ExperimentReport& r);
std::vector<Claim> claims_from_csv(const std::string& text);

const std::vector<std::string>& experiment_names();

/// FNV-1a hash of the name.
std::uint64_t default_seed(std::string_view name);

/// Runs a registry entry. Unknown names and unknown parameter keys raise
/// InputError. Recognized in every entry: "seed".
ExperimentReport run_experiment(const std::string& name,
                                const nlohmann::json& params = nlohmann::json::object());

/// Test hook: moves the expected value of claim `index` far enough that the
/// claim fails, and re-evaluates it.
void perturb_expected(ExperimentReport& r, std::size_t index);

/// 0 when every claim passes, 1 otherwise.
int exit_code(const ExperimentReport& r);

/// Largest partition_value over all weak compositions of k into d parts,
/// by exhaustive enumeration. `count` receives the number of compositions.
ExactRational max_over_compositions(int k, int d, long* count = nullptr);

}  // namespace cpolar
