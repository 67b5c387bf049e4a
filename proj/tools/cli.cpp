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

// Command-line front end. Exit codes: 0 success, 1 failed claim or
// numerical failure, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cpolar/constants.hpp"
#include "cpolar/errors.hpp"
#include "cpolar/experiments.hpp"
#include "cpolar/optimize.hpp"
#include "cpolar/poly.hpp"
#include "cpolar/quotient.hpp"
#include "json.hpp"

namespace {

using cpolar::Exponent;
using cpolar::Field;
using nlohmann::json;

constexpr int kUsage = 2;

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw cpolar::InputError(std::string(what) + ": bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw cpolar::InputError(std::string(what) + ": empty list");
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cpolar::InputError("cannot write '" + path + "'");
  out << text;
}

void print_constant_row(int k, int d, const cpolar::ExactRational& c) {
  std::printf("%d\t%d\t%s\t%s\t%.15g\n", k, d, c.fraction().c_str(),
              c.decimal(15).c_str(), std::exp(c.log() / k));
}

cpolar::OptimConfig config(int starts, std::uint64_t seed) {
  cpolar::OptimConfig cfg;
  cfg.starts = starts;
  cfg.seed = seed;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization constants of homogeneous polynomials on l_p spaces"};
  app.require_subcommand(1);

  int k = 0, d = 0;
  auto* exact = app.add_subcommand("exact-c", "Exact c(k, l_1^d)");
  exact->add_option("--k", k, "degree")->required();
  exact->add_option("--d", d, "dimension")->required();

  std::string parts_s;
  auto* harris = app.add_subcommand("harris", "Mixed polarization bound");
  harris->add_option("--parts", parts_s, "k1,k2,...")->required();

  std::string klist_s;
  auto* roots = app.add_subcommand("roots", "k-th roots of c(k, l_1^d)");
  roots->add_option("--d", d, "dimension")->required();
  roots->add_option("--k-list", klist_s, "k1,k2,...")->required();

  std::string poly_path, p_s = "2", field_s, target = "poly", blocks_s;
  int starts = 200;
  std::uint64_t seed = 0;
  auto* estimate = app.add_subcommand("estimate", "Norm lower bound with witness");
  estimate->add_option("--poly", poly_path, "polynomial JSON file")->required();
  estimate->add_option("--p", p_s, "exponent or inf")->required();
  estimate->add_option("--field", field_s, "real|complex (default: polynomial's)");
  estimate->add_option("--target", target, "poly|multilinear|blocked")
      ->check(CLI::IsMember({"poly", "multilinear", "blocked"}));
  estimate->add_option("--blocks", blocks_s, "k1,k2,... for --target blocked");
  estimate->add_option("--starts", starts, "multistart count");
  estimate->add_option("--seed", seed, "seed");

  double exact_den = 0.0;
  auto* ratio = app.add_subcommand("ratio", "||P^v|| / ||P|| estimate");
  ratio->add_option("--poly", poly_path)->required();
  ratio->add_option("--p", p_s)->required();
  auto* den_opt = ratio->add_option("--exact-denominator", exact_den,
                                    "known ||P||; makes the ratio rigorous");
  ratio->add_option("--starts", starts);
  ratio->add_option("--seed", seed);

  auto* bochnak = app.add_subcommand("bochnak", "||P~|| / ||P|| for real P");
  bochnak->add_option("--poly", poly_path)->required();
  bochnak->add_option("--p", p_s)->required();
  bochnak->add_option("--starts", starts);
  bochnak->add_option("--seed", seed);

  int dim = 2, degree = 2;
  double eta = 0.1, epsilon = 0.2;
  std::string qfield = "real";
  auto* qdemo = app.add_subcommand("quotient-demo", "l_1 quotient map demo");
  qdemo->add_option("--p", p_s)->required();
  qdemo->add_option("--dim", dim)->required();
  qdemo->add_option("--eta", eta)->required();
  qdemo->add_option("--epsilon", epsilon)->required();
  qdemo->add_option("--field", qfield);
  qdemo->add_option("--degree", degree, "degree of the random test polynomial");
  qdemo->add_option("--seed", seed);

  std::string name, json_out, csv_out, params_s = "{}";
  int perturb = -1;
  auto* verify = app.add_subcommand("verify", "Run a named experiment");
  verify->add_option("name", name)->required();
  verify->add_option("--json", json_out, "write JSON report");
  verify->add_option("--csv", csv_out, "write CSV claims");
  auto* seed_opt = verify->add_option("--seed", seed);
  verify->add_option("--params", params_s, "JSON object of parameters");
  verify->add_option("--perturb-claim", perturb)->group("");  // test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsage;
  }

  try {
    if (*exact) {
      std::printf("k\td\tc\tdecimal\troot\n");
      print_constant_row(k, d, cpolar::exact_c_l1(k, d));
    } else if (*harris) {
      const cpolar::Partition pt{parse_int_list(parts_s, "--parts")};
      const auto h = cpolar::harris_bound(pt);
      std::printf("%s\t%s\n", h.fraction().c_str(), h.decimal(15).c_str());
    } else if (*roots) {
      std::printf("k\td\tlog_c\troot\n");
      for (const auto& e : cpolar::root_sequence(d, parse_int_list(klist_s, "--k-list")))
        std::printf("%d\t%d\t%.15g\t%.15g\n", e.k, d,
                    cpolar::exact_c_l1(e.k, d).log(), e.root);
    } else if (*estimate) {
      cpolar::HomogeneousPolynomial P = cpolar::load_polynomial(poly_path);
      const Field field = field_s.empty() ? P.field() : cpolar::field_from_string(field_s);
      if (field == Field::Complex && P.field() == Field::Real) P = cpolar::complexify(P);
      const cpolar::SpaceSpec spec(P.dim(), Exponent::parse(p_s), field);
      const cpolar::OptimConfig cfg = config(starts, seed);
      cpolar::NormEstimate est;
      if (target == "poly") {
        est = cpolar::estimate_poly_norm(P, spec, cfg);
      } else if (target == "multilinear") {
        est = cpolar::estimate_multilinear_norm(P, spec, cfg);
      } else {
        if (blocks_s.empty())
          throw cpolar::InputError("--target blocked needs --blocks");
        est = cpolar::estimate_blocked_norm(
            P, cpolar::Partition{parse_int_list(blocks_s, "--blocks")}, spec, cfg);
      }
      std::cout << cpolar::to_json(est).dump(2) << "\n";
    } else if (*ratio) {
      const auto P = cpolar::load_polynomial(poly_path);
      const cpolar::SpaceSpec spec(P.dim(), Exponent::parse(p_s), P.field());
      std::optional<double> den;
      if (*den_opt) den = exact_den;
      std::cout << cpolar::to_json(cpolar::estimate_ratio(P, spec, config(starts, seed), den))
                       .dump(2)
                << "\n";
    } else if (*bochnak) {
      const auto P = cpolar::load_polynomial(poly_path);
      const cpolar::SpaceSpec spec(P.dim(), Exponent::parse(p_s), P.field());
      std::cout << cpolar::to_json(cpolar::estimate_bochnak_ratio(P, spec, config(starts, seed)))
                       .dump(2)
                << "\n";
    } else if (*qdemo) {
      const cpolar::SpaceSpec spec(dim, Exponent::parse(p_s),
                                   cpolar::field_from_string(qfield));
      const cpolar::QuotientMap Q = cpolar::build_quotient(spec, eta, epsilon, seed);
      std::mt19937_64 rng(seed);
      double l1_ratio = 0.0, residual = 0.0;
      for (int i = 0; i < 100; ++i) {
        const auto x = cpolar::random_unit_vector(spec, rng);
        const auto pre = cpolar::greedy_preimage(Q, x);
        l1_ratio = std::max(l1_ratio, pre.z.l1_norm());
        residual = std::max(residual, pre.residual);
      }
      const auto P = cpolar::random_polynomial(degree, dim, spec.field, seed);
      const auto rep = cpolar::verify_transfer_bound(P, Q, config(200, seed), 8, seed);
      const json out{{"d", Q.d()},
                     {"eta", eta},
                     {"epsilon", epsilon},
                     {"max_l1_ratio", std::max(l1_ratio, rep.max_l1_ratio)},
                     {"max_residual", std::max(residual, rep.max_residual)},
                     {"transfer_slack", rep.max_slack}};
      std::cout << out.dump(2) << "\n";
    } else if (*verify) {
      json params;
      try {
        params = json::parse(params_s);
      } catch (const json::parse_error& e) {
        throw cpolar::InputError(std::string("--params: ") + e.what());
      }
      if (*seed_opt) params["seed"] = seed;
      auto report = cpolar::run_experiment(name, params);
      if (perturb >= 0) cpolar::perturb_expected(report, static_cast<std::size_t>(perturb));
      for (const auto& c : report.claims)
        std::printf("%s  %s: observed %.12g, expected %.12g (%s, tol %g)\n",
                    c.pass ? "PASS" : "FAIL", c.description.c_str(), c.observed,
                    c.expected, cpolar::to_string(c.direction).c_str(), c.tolerance);
      std::printf("%s: %s in %.2f s (seed %llu)\n", report.name.c_str(),
                  report.all_pass() ? "all claims pass" : "FAILED", report.wall_time,
                  static_cast<unsigned long long>(report.seed));
      if (!json_out.empty()) write_file(json_out, cpolar::to_json(report).dump(2) + "\n");
      if (!csv_out.empty()) write_file(csv_out, cpolar::to_csv(report));
      return cpolar::exit_code(report);
    }
  } catch (const cpolar::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (last residual " << e.last_residual()
              << ")\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cpolar::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
