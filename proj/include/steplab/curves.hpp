// Copyright 2026 The steplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEPLAB_CURVES_HPP
#define STEPLAB_CURVES_HPP

#include <cstdint>
#include <vector>

#include "steplab/truncations.hpp"

namespace steplab {

// Quadratic character of every residue mod p.
class SquareTable {
 public:
  explicit SquareTable(const Prime& p) : p_(p), chi_(p.value(), -1) {
    chi_[0] = 0;
    for (u64 x = 1; x <= p.value() / 2; ++x) chi_[p.mul(x, x)] = 1;
  }

  const Prime& modulus() const noexcept { return p_; }
  int chi(u64 a) const { return chi_[p_.reduce(a)]; }

 private:
  Prime p_;
  std::vector<std::int8_t> chi_;
};

struct CurveCount {
  u64 p, lambda, affine;
  long long trace;  // p + 1 - (affine + 1)
};

inline void require_legendre(const Prime& p, u64 lambda) {
  if (p.value() < 5) throw Error(ErrorCode::DegenerateCase, "Legendre curves need p >= 5");
  if (lambda == 0 || lambda == 1) throw Error(ErrorCode::SingularCurve, "lambda in {0, 1} gives a singular curve");
}

// #{(x, y) : y^2 = x (x - 1)(x - lambda)} over F_p.
inline u64 count_affine_points(const SquareTable& t, u64 lambda) {
  const Prime& p = t.modulus();
  lambda = p.reduce(lambda);
  require_legendre(p, lambda);
  long long total = 0;
  for (u64 x = 0; x < p.value(); ++x) {
    const u64 f = p.mul(p.mul(x, p.sub(x, 1)), p.sub(x, lambda));
    total += 1 + t.chi(f);
  }
  return static_cast<u64>(total);
}

inline u64 count_affine_points(const Prime& p, u64 lambda) { return count_affine_points(SquareTable(p), lambda); }

inline CurveCount curve_count(const SquareTable& t, u64 lambda) {
  const u64 q = t.modulus().value();
  lambda = t.modulus().reduce(lambda);
  const u64 n = count_affine_points(t, lambda);
  return {q, lambda, n, static_cast<long long>(q) - static_cast<long long>(n)};
}

struct HasseCheck {
  CurveCount curve;
  u64 hasse_value;
  bool congruence;   // a_p = (-1)^((p-1)/2) H_p(lambda) mod p
  bool hasse_bound;  // a_p^2 <= 4p
  bool pass() const { return congruence && hasse_bound; }
};

inline HasseCheck verify_hasse_congruence(const SquareTable& t, const DensePoly& hasse, u64 lambda) {
  const Prime& p = t.modulus();
  const CurveCount c = curve_count(t, lambda);
  const u64 h = hasse.eval(c.lambda);
  const u64 rhs = ((p.value() - 1) / 2) % 2 == 0 ? h : p.neg(h);
  const long long a = c.trace, q = static_cast<long long>(p.value());
  const u64 lhs = static_cast<u64>(((a % q) + q) % q);
  return {c, h, lhs == rhs, static_cast<u128>(a * a) <= 4 * static_cast<u128>(q)};
}

inline HasseCheck verify_hasse_congruence(const Prime& p, u64 lambda) {
  require_legendre(p, p.reduce(lambda));
  return verify_hasse_congruence(SquareTable(p), gen_hasse(p), lambda);
}

inline constexpr u64 kMaxFullHassePrime = 499;

// Every lambda in F_p minus {0, 1}, ascending.
inline std::vector<HasseCheck> hasse_sweep(const Prime& p) {
  if (p.value() > kMaxFullHassePrime) {
    throw Error(ErrorCode::BudgetExceeded, "full lambda sweep is capped at p <= " + std::to_string(kMaxFullHassePrime));
  }
  require_legendre(p, 2);
  SquareTable t(p);
  const DensePoly h = gen_hasse(p);
  std::vector<HasseCheck> out;
  for (u64 l = 2; l < p.value(); ++l) out.push_back(verify_hasse_congruence(t, h, l));
  return out;
}

}  // namespace steplab

#endif  // STEPLAB_CURVES_HPP
