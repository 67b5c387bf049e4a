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

#include "cpolar/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cpolar/errors.hpp"

namespace cpolar {

std::string to_string(Field f) {
  return f == Field::Real ? "real" : "complex";
}

Field field_from_string(const std::string& s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw InputError("unknown field '" + s + "' (expected real|complex)");
}

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p) || p < 1.0)
    throw InputError("exponent p must satisfy p >= 1, got " +
                     std::to_string(p));
  return Exponent(p, false);
}

Exponent Exponent::parse(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse exponent '" + s + "'");
  }
  if (used != s.size()) throw InputError("cannot parse exponent '" + s + "'");
  return finite(v);
}

double Exponent::value() const {
  if (infinite_) throw InputError("exponent is infinite");
  return value_;
}

Exponent Exponent::conjugate() const {
  if (infinite_) return finite(1.0);
  if (value_ == 1.0) return infinity();
  return finite(value_ / (value_ - 1.0));
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

SpaceSpec::SpaceSpec(int dim_, Exponent p_, Field field_)
    : dim(dim_), p(p_), field(field_) {
  if (dim < 1) throw InputError("space dimension must be >= 1");
}

void to_json(nlohmann::json& j, const SpaceSpec& s) {
  j = nlohmann::json::object();
  j["dim"] = s.dim;
  if (s.p.is_infinite())
    j["p"] = "inf";
  else
    j["p"] = s.p.value();
  j["field"] = to_string(s.field);
}

SpaceSpec space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("space spec must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw InputError("space spec: 'dim' must be an integer");
  if (!j.contains("p")) throw InputError("space spec: missing 'p'");
  Exponent p = Exponent::infinity();
  if (j["p"].is_string())
    p = Exponent::parse(j["p"].get<std::string>());
  else if (j["p"].is_number())
    p = Exponent::finite(j["p"].get<double>());
  else
    throw InputError("space spec: 'p' must be a number or \"inf\"");
  if (!j.contains("field") || !j["field"].is_string())
    throw InputError("space spec: 'field' must be a string");
  return SpaceSpec(j["dim"].get<int>(), p,
                   field_from_string(j["field"].get<std::string>()));
}

Scalar unit_phase(Scalar z) {
  const double r = std::abs(z);
  if (r == 0.0) return Scalar(1.0, 0.0);
  return z / r;
}

Scalar pairing(const Vector& phi, const Vector& x) {
  if (phi.size() != x.size()) throw InputError("pairing: length mismatch");
  Scalar s(0.0, 0.0);
  for (Eigen::Index j = 0; j < phi.size(); ++j) s += phi[j] * x[j];
  return s;
}

namespace {

// ||x||_p with the largest modulus factored out to keep powers in range.
double lp_norm(const Vector& x, const Exponent& p) {
  double mx = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) mx = std::max(mx, std::abs(x[j]));
  if (p.is_infinite() || mx == 0.0) return mx;
  if (p.is_one()) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) s += std::abs(x[j]);
    return s;
  }
  if (p.is_two()) return x.stableNorm();
  const double pv = p.value();
  double s = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    s += std::pow(std::abs(x[j]) / mx, pv);
  return mx * std::pow(s, 1.0 / pv);
}

}  // namespace

void check_vector(const Vector& x, const SpaceSpec& spec) {
  if (x.size() != spec.dim)
    throw InputError("vector has length " + std::to_string(x.size()) +
                     ", space has dim " + std::to_string(spec.dim));
  if (spec.field == Field::Real) {
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (x[j].imag() != 0.0)
        throw InputError("complex entry in a vector of a real space");
  }
}

double norm(const Vector& x, const SpaceSpec& spec) {
  if (x.size() != spec.dim)
    throw InputError("norm: vector length does not match space dim");
  return lp_norm(x, spec.p);
}

double dual_norm(const Vector& phi, const SpaceSpec& spec) {
  if (phi.size() != spec.dim)
    throw InputError("dual_norm: vector length does not match space dim");
  return lp_norm(phi, spec.p.conjugate());
}

Vector project_to_sphere(const Vector& x, const SpaceSpec& spec) {
  const double r = norm(x, spec);
  if (r == 0.0) throw DegenerateInputError("cannot project the zero vector");
  return x / r;
}

Vector dual_align(const Vector& phi, const SpaceSpec& spec) {
  if (phi.size() != spec.dim)
    throw InputError("dual_align: vector length does not match space dim");
  const Eigen::Index n = phi.size();
  double mx = 0.0;
  Eigen::Index arg = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(phi[j]);
    if (a > mx) {
      mx = a;
      arg = j;
    }
  }
  if (mx == 0.0) throw DegenerateInputError("dual_align: zero functional");

  Vector x(n);
  if (spec.p.is_infinite()) {
    for (Eigen::Index j = 0; j < n; ++j) x[j] = std::conj(unit_phase(phi[j]));
    return x;
  }
  if (spec.p.is_one()) {
    x.setZero();
    x[arg] = std::conj(unit_phase(phi[arg]));
    return x;
  }
  // |x_j| proportional to |phi_j|^(p'-1) = |phi_j|^(1/(p-1)).
  const double expo = 1.0 / (spec.p.value() - 1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(phi[j]) / mx;
    const double m = a == 0.0 ? 0.0 : std::pow(a, expo);
    x[j] = m * std::conj(unit_phase(phi[j]));
  }
  return x / lp_norm(x, spec.p);
}

Vector random_unit_vector(const SpaceSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x(spec.dim);
  for (;;) {
    for (int j = 0; j < spec.dim; ++j) {
      const double re = gauss(rng);
      const double im = spec.field == Field::Complex ? gauss(rng) : 0.0;
      x[j] = Scalar(re, im);
    }
    if (lp_norm(x, spec.p) > 0.0) return x / lp_norm(x, spec.p);
  }
}

Vector basis_vector(int n, int j) {
  if (j < 0 || j >= n) throw InputError("basis index out of range");
  Vector e = Vector::Zero(n);
  e[j] = 1.0;
  return e;
}

}  // namespace cpolar
