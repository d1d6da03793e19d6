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

#ifndef STEPLAB_TRUNCATIONS_HPP
#define STEPLAB_TRUNCATIONS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "steplab/dense_poly.hpp"

namespace steplab {

enum class FamilyTag { PolyLog, PolyExp, Bessel, Hasse, RSeries };

struct FamilyId {
  FamilyTag tag = FamilyTag::PolyLog;
  unsigned k = 1;

  static FamilyId polylog(unsigned k) { return {FamilyTag::PolyLog, k}; }
  static FamilyId polyexp(unsigned k) { return {FamilyTag::PolyExp, k}; }
  static FamilyId bessel() { return {FamilyTag::Bessel, 0}; }
  static FamilyId hasse() { return {FamilyTag::Hasse, 0}; }
  static FamilyId rseries() { return {FamilyTag::RSeries, 0}; }

  bool has_order() const noexcept { return tag == FamilyTag::PolyLog || tag == FamilyTag::PolyExp; }

  // Throws InvalidOrder for PolyLog(0).
  void validate() const {
    if (tag == FamilyTag::PolyLog && k == 0) {
      throw Error(ErrorCode::InvalidOrder, "polylogarithm order must be at least 1");
    }
  }

  bool operator==(const FamilyId&) const = default;
};

// Short names used on the command line and in output files.
inline const char* family_code(FamilyTag t) {
  switch (t) {
    case FamilyTag::PolyLog: return "L";
    case FamilyTag::PolyExp: return "E";
    case FamilyTag::Bessel: return "J0";
    case FamilyTag::Hasse: return "H";
    case FamilyTag::RSeries: return "R";
  }
  return "?";
}

inline FamilyTag parse_family_code(std::string_view s) {
  if (s == "L") return FamilyTag::PolyLog;
  if (s == "E") return FamilyTag::PolyExp;
  if (s == "J0") return FamilyTag::Bessel;
  if (s == "H") return FamilyTag::Hasse;
  if (s == "R") return FamilyTag::RSeries;
  throw Error(ErrorCode::UnsupportedFamily, "unknown family '" + std::string(s) + "'");
}

inline std::string to_string(const FamilyId& f) {
  std::string s = family_code(f.tag);
  if (f.has_order()) s += "(" + std::to_string(f.k) + ")";
  return s;
}

// Inverses, factorials and inverse factorials of 0..n mod p, n < p.
class FieldTables {
 public:
  FieldTables(const Prime& p, std::size_t n) : p_(p), inv_(n + 1, 0), fact_(n + 1, 1), inv_fact_(n + 1, 1) {
    if (n >= p.value()) throw Error(ErrorCode::InversionOfZero, "table size reaches p");
    if (n >= 1) inv_[1] = 1;
    // inv(i) = -(p / i) * inv(p mod i)
    for (std::size_t i = 2; i <= n; ++i) {
      inv_[i] = p.neg(p.mul(p.reduce(p.value() / i), inv_[p.value() % i]));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      fact_[i] = p.mul(fact_[i - 1], p.reduce(i));
      inv_fact_[i] = p.mul(inv_fact_[i - 1], inv_[i]);
    }
  }

  u64 inv(std::size_t i) const { return inv_[i]; }
  u64 fact(std::size_t i) const { return fact_[i]; }
  u64 inv_fact(std::size_t i) const { return inv_fact_[i]; }
  u64 binom(std::size_t n, std::size_t r) const {
    if (r > n) return 0;
    return p_.mul(fact_[n], p_.mul(inv_fact_[r], inv_fact_[n - r]));
  }

 private:
  Prime p_;
  std::vector<u64> inv_, fact_, inv_fact_;
};

// sum_{i=1}^{p-1} x^i / i^k
inline DensePoly gen_polylog(const Prime& p, unsigned k) {
  FamilyId::polylog(k).validate();
  const std::size_t n = p.value() - 1;
  FieldTables t(p, n);
  std::vector<u64> c(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) c[i] = p.pow(t.inv(i), k);
  return DensePoly::from_canonical(p, std::move(c));
}

// [k == 0] + sum_{i=1}^{p-1} x^i / (i! i^k)
inline DensePoly gen_polyexp(const Prime& p, unsigned k) {
  const std::size_t n = p.value() - 1;
  FieldTables t(p, n);
  std::vector<u64> c(n + 1, 0);
  c[0] = k == 0 ? 1 : 0;
  for (std::size_t i = 1; i <= n; ++i) c[i] = p.mul(t.inv_fact(i), p.pow(t.inv(i), k));
  return DensePoly::from_canonical(p, std::move(c));
}

// Coefficient of x^{2n} in the truncated Bessel series: (-1)^n / (4^n (n!)^2).
inline u64 bessel_coeff(const Prime& p, const FieldTables& t, std::size_t n) {
  u64 v = p.mul(p.pow(p.inv(4), n), p.mul(t.inv_fact(n), t.inv_fact(n)));
  return n % 2 ? p.neg(v) : v;
}

// sum_{n=0}^{(p+1)/2} (-1)^n (x/2)^{2n} / (n!)^2, degree p + 1.
inline DensePoly gen_bessel(const Prime& p) {
  const std::size_t top = (p.value() + 1) / 2;
  FieldTables t(p, top);
  std::vector<u64> c(2 * top + 1, 0);
  for (std::size_t n = 0; n <= top; ++n) c[2 * n] = bessel_coeff(p, t, n);
  return DensePoly::from_canonical(p, std::move(c));
}

// The constant c with x J'' + J' + x J = c x^{p+2}: the top coefficient of J.
inline u64 bessel_constant(const Prime& p) {
  const std::size_t top = (p.value() + 1) / 2;
  return bessel_coeff(p, FieldTables(p, top), top);
}

// sum_{n=0}^{D} binom(D, n)^2 lambda^n with D = (p-1)/2.  At p = 3 the
// polynomial 1 + lambda is still returned.
inline DensePoly gen_hasse(const Prime& p) {
  const std::size_t d = (p.value() - 1) / 2;
  FieldTables t(p, d);
  std::vector<u64> c(d + 1);
  for (std::size_t n = 0; n <= d; ++n) {
    const u64 b = t.binom(d, n);
    c[n] = p.mul(b, b);
  }
  return DensePoly::from_canonical(p, std::move(c));
}

// sum_{k=0}^{(p-3)/2} 2^k x^{2k+1} / (1*3*...*(2k+1)), degree p - 2.
inline DensePoly gen_r(const Prime& p) {
  if (p.value() < 5) throw Error(ErrorCode::DegenerateCase, "R series needs p >= 5");
  const std::size_t top = (p.value() - 3) / 2;
  std::vector<u64> c(2 * top + 2, 0);
  u64 num = 1, den = 1;
  for (std::size_t k = 0; k <= top; ++k) {
    if (k > 0) {
      num = p.mul(num, 2);
      den = p.mul(den, p.reduce(2 * k + 1));
    }
    c[2 * k + 1] = p.mul(num, p.inv(den));
  }
  return DensePoly::from_canonical(p, std::move(c));
}

inline DensePoly generate(const FamilyId& f, const Prime& p) {
  switch (f.tag) {
    case FamilyTag::PolyLog: return gen_polylog(p, f.k);
    case FamilyTag::PolyExp: return gen_polyexp(p, f.k);
    case FamilyTag::Bessel: return gen_bessel(p);
    case FamilyTag::Hasse: return gen_hasse(p);
    case FamilyTag::RSeries: return gen_r(p);
  }
  throw Error(ErrorCode::UnsupportedFamily, "unknown family");
}

}  // namespace steplab

#endif  // STEPLAB_TRUNCATIONS_HPP
