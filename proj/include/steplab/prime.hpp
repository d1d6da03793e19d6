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

#ifndef STEPLAB_PRIME_HPP
#define STEPLAB_PRIME_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

#include "steplab/error.hpp"

namespace steplab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod_u128(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod_u128(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u128(r, a, m);
    a = mulmod_u128(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; the first twelve prime bases are exact for all
// 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> bases = {2,  3,  5,  7,  11, 13,
                                                17, 19, 23, 29, 31, 37};
  for (u64 q : bases) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = detail::powmod_u128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_u128(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// An odd prime 3 <= p < 2^62, with the scalar arithmetic of F_p.
// All inputs to the arithmetic members are canonical residues in [0, p).
class Prime {
 public:
  static constexpr u64 kLimit = u64{1} << 62;

  explicit Prime(u64 p) : p_(p) {
    if (p < 3 || p >= kLimit || !is_prime(p)) {
      throw Error(ErrorCode::NotPrime,
                  std::to_string(p) + " is not an odd prime below 2^62");
    }
    small_ = p < (u64{1} << 32);
    barrett_ = ~u64{0} / p;
  }

  u64 value() const noexcept { return p_; }
  operator u64() const noexcept { return p_; }

  u64 reduce(u64 a) const noexcept { return a % p_; }
  u64 reduce_signed(std::int64_t a) const noexcept {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }

  u64 mul(u64 a, u64 b) const noexcept {
    if (small_) return barrett(a * b);
    return detail::mulmod_u128(a, b, p_);
  }

  // a*b + c without intermediate normalization of the sum.
  u64 mul_add(u64 a, u64 b, u64 c) const noexcept { return add(mul(a, b), c); }

  u64 pow(u64 a, u64 e) const noexcept {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  u64 inv(u64 a) const {
    if (a == 0) throw Error(ErrorCode::InversionOfZero, "inverse of 0 mod " + std::to_string(p_));
    // extended Euclid on (a, p), tracking only the coefficient of a
    std::int64_t t0 = 0, t1 = 1;
    u64 r0 = p_, r1 = a;
    while (r1 != 0) {
      u64 q = r0 / r1;
      u64 r2 = r0 - q * r1;
      std::int64_t t2 = t0 - static_cast<std::int64_t>(q) * t1;
      r0 = r1;
      r1 = r2;
      t0 = t1;
      t1 = t2;
    }
    return reduce_signed(t0);
  }

  bool operator==(const Prime& o) const noexcept { return p_ == o.p_; }
  bool operator!=(const Prime& o) const noexcept { return p_ != o.p_; }

 private:
  u64 barrett(u64 x) const noexcept {
    u64 q = static_cast<u64>((static_cast<u128>(x) * barrett_) >> 64);
    u64 r = x - q * p_;
    return r >= p_ ? r - p_ : r;
  }

  u64 p_;
  u64 barrett_ = 0;
  bool small_ = false;
};

class FieldElement {
 public:
  FieldElement(u64 value, Prime modulus)
      : value_(modulus.reduce(value)), modulus_(modulus) {}

  static FieldElement from_signed(std::int64_t v, Prime modulus) {
    return FieldElement(modulus.reduce_signed(v), modulus);
  }

  u64 value() const noexcept { return value_; }
  const Prime& modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const {
    check(o);
    return {modulus_.add(value_, o.value_), modulus_};
  }
  FieldElement operator-(const FieldElement& o) const {
    check(o);
    return {modulus_.sub(value_, o.value_), modulus_};
  }
  FieldElement operator*(const FieldElement& o) const {
    check(o);
    return {modulus_.mul(value_, o.value_), modulus_};
  }
  FieldElement operator-() const { return {modulus_.neg(value_), modulus_}; }

  bool operator==(const FieldElement& o) const noexcept {
    return value_ == o.value_ && modulus_ == o.modulus_;
  }
  bool operator!=(const FieldElement& o) const noexcept { return !(*this == o); }

 private:
  void check(const FieldElement& o) const {
    if (modulus_ != o.modulus_) {
      throw Error(ErrorCode::ModulusMismatch, "field elements over different primes");
    }
  }

  u64 value_;
  Prime modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
  return os << a.value() << " (mod " << a.modulus().value() << ")";
}

inline FieldElement fp_inv(const FieldElement& a) {
  return FieldElement(a.modulus().inv(a.value()), a.modulus());
}

}  // namespace steplab

#endif  // STEPLAB_PRIME_HPP
