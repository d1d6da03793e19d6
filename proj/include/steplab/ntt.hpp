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

#ifndef STEPLAB_NTT_HPP
#define STEPLAB_NTT_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "steplab/prime.hpp"

// Convolution of residue sequences mod an arbitrary p < 2^62.
//
// Inputs are lifted to integers in [0, p), convolved exactly modulo a prefix
// of three fixed 62-bit primes of the form c*2^40 + 1, recombined with
// Garner's algorithm and reduced mod p.  The prefix length is the smallest
// whose product exceeds (p-1)^2 * min(len_a, len_b).

namespace steplab::ntt {

namespace detail {

// Montgomery arithmetic modulo an odd m < 2^62 with R = 2^64.
class Mont {
 public:
  constexpr Mont() = default;
  explicit Mont(u64 m) : m_(m) {
    u64 inv = m;  // Newton iteration for m^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - m * inv;
    neg_inv_ = ~inv + 1;
    r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % m);
    r2_ = static_cast<u64>(static_cast<u128>(r2_) * r2_ % m);
  }

  u64 mod() const { return m_; }

  u64 reduce(u128 t) const {
    u64 q = static_cast<u64>(t) * neg_inv_;
    u64 r = static_cast<u64>((t + static_cast<u128>(q) * m_) >> 64);
    return r >= m_ ? r - m_ : r;
  }
  u64 to(u64 a) const { return reduce(static_cast<u128>(a % m_) * r2_); }
  u64 from(u64 a) const { return reduce(a); }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
  u64 pow(u64 a, u64 e) const {
    u64 r = to(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  u64 m_ = 0;
  u64 neg_inv_ = 0;
  u64 r2_ = 0;
};

struct TransformPrime {
  u64 modulus;
  u64 generator;
};

inline constexpr std::array<TransformPrime, 3> kPrimes = {{
    {4611615649683210241ULL, 11},  // 4194240 * 2^40 + 1
    {4611613450659954689ULL, 3},   // 4194238 * 2^40 + 1
    {4611549678985543681ULL, 19},  // 4194180 * 2^40 + 1
}};

inline constexpr int kMaxLog = 40;

// Twiddle factors laid out by level: entry len + j holds w^j for w a
// primitive (2 len)-th root of unity, j < len.  The table covers every
// level up to the largest length requested so far on this thread.
struct Twiddles {
  std::size_t n = 0;
  std::vector<u64> fwd, inv;
};

inline const Twiddles& twiddles(int which, const Mont& mt, u64 generator, std::size_t n) {
  thread_local std::array<Twiddles, 3> cache;
  Twiddles& t = cache[which];
  if (t.n >= n) return t;
  const u64 m = mt.mod();
  t.n = n;
  t.fwd.assign(n, 0);
  t.inv.assign(n, 0);
  for (std::size_t len = 1; len < n; len <<= 1) {
    const u64 root = mt.pow(mt.to(generator), (m - 1) / (2 * len));
    const u64 iroot = mt.pow(root, 2 * len - 1);
    t.fwd[len] = t.inv[len] = mt.to(1);
    for (std::size_t j = 1; j < len; ++j) {
      t.fwd[len + j] = mt.mul(t.fwd[len + j - 1], root);
      t.inv[len + j] = mt.mul(t.inv[len + j - 1], iroot);
    }
  }
  return t;
}

// In-place transform of length n = 2^k over Montgomery residues.  Forward is
// decimation-in-frequency (natural in, bit-reversed out); inverse is
// decimation-in-time (bit-reversed in, natural out) and includes 1/n.
inline void transform(std::vector<u64>& a, const Mont& mt, int which, u64 generator, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  const u64 m = mt.mod();
  const Twiddles& tw = twiddles(which, mt, generator, n);
  u64* x = a.data();

  if (!inverse) {
    const u64* w = tw.fwd.data();
    for (std::size_t len = n / 2; len >= 1; len >>= 1) {
      const u64* wl = w + len;
      for (std::size_t i = 0; i < n; i += 2 * len) {
        u64* lo = x + i;
        u64* hi = x + i + len;
        for (std::size_t j = 0; j < len; ++j) {
          const u64 u = lo[j], v = hi[j];
          lo[j] = mt.add(u, v);
          hi[j] = mt.mul(mt.sub(u, v), wl[j]);
        }
      }
    }
  } else {
    const u64* w = tw.inv.data();
    for (std::size_t len = 1; len < n; len <<= 1) {
      const u64* wl = w + len;
      for (std::size_t i = 0; i < n; i += 2 * len) {
        u64* lo = x + i;
        u64* hi = x + i + len;
        for (std::size_t j = 0; j < len; ++j) {
          const u64 u = lo[j];
          const u64 v = mt.mul(hi[j], wl[j]);
          lo[j] = mt.add(u, v);
          hi[j] = mt.sub(u, v);
        }
      }
    }
    const u64 n_inv = mt.pow(mt.to(n % m), m - 2);
    for (auto& v : a) v = mt.mul(v, n_inv);
  }
}

// Number of transform primes needed so that their product exceeds
// (p-1)^2 * weight, where weight bounds the number of products summed into
// one output coefficient.
inline int primes_needed(u64 p, std::size_t weight) {
  const u128 pm1 = p - 1;
  const u128 bound_sq = pm1 * pm1;  // < 2^124
  const u128 len = weight;
  const u128 m1 = kPrimes[0].modulus;
  if (bound_sq <= (m1 - 1) / len) return 1;
  const u128 m12 = m1 * kPrimes[1].modulus;  // < 2^124
  if (bound_sq <= (m12 - 1) / len) return 2;
  return 3;
}

// Garner recombination of residues modulo the first k transform primes into
// residues mod p: x = t1 + m1 t2 + m1 m2 t3.
inline void garner(std::array<std::vector<u64>, 3>& r, int k, const Prime& p, std::vector<u64>& out) {
  const std::size_t len = r[0].size();
  out.resize(len);
  if (k == 1) {
    for (std::size_t i = 0; i < len; ++i) out[i] = p.reduce(r[0][i]);
    return;
  }
  const u64 m1 = kPrimes[0].modulus, m2 = kPrimes[1].modulus, m3 = kPrimes[2].modulus;
  const Mont mt2(m2), mt3(m3);
  const u64 inv_m1_mod_m2 = mt2.to(steplab::detail::powmod_u128(m1 % m2, m2 - 2, m2));
  const u64 m12_mod_m3 = steplab::detail::mulmod_u128(m1 % m3, m2 % m3, m3);
  const u64 inv_m12_mod_m3 = mt3.to(steplab::detail::powmod_u128(m12_mod_m3, m3 - 2, m3));
  const u64 m1_mod_m3 = mt3.to(m1 % m3);
  const u64 m1_mod_p = p.reduce(m1);
  const u64 m12_mod_p = p.mul(m1_mod_p, p.reduce(m2));

  for (std::size_t i = 0; i < len; ++i) {
    const u64 t1 = r[0][i];
    const u64 t2 = mt2.mul(mt2.sub(r[1][i], t1 % m2), inv_m1_mod_m2);
    u64 x = p.add(p.reduce(t1), p.mul(m1_mod_p, p.reduce(t2)));
    if (k == 3) {
      u64 s = mt3.sub(r[2][i], t1 % m3);
      s = mt3.sub(s, mt3.mul(t2, m1_mod_m3));  // m1_mod_m3 is in Montgomery form
      const u64 t3 = mt3.mul(s, inv_m12_mod_m3);
      x = p.add(x, p.mul(m12_mod_p, p.reduce(t3)));
    }
    out[i] = x;
  }
}

}  // namespace detail

// One summand lhs[a] * rhs[b] of a sum of products.
struct ProductTerm {
  std::size_t a, b;
};

// out[k] = sum over terms[k] of lhs[a] * rhs[b] over F_p.  Every operand is
// transformed once per transform prime however many outputs use it, so a
// 2x2 matrix product costs 8 forward and 4 inverse transforms.  Empty spans
// stand for zero; an output with no nonzero terms is empty.  Outputs are
// not trimmed.
inline std::vector<std::vector<u64>> sum_of_products(std::span<const std::span<const u64>> lhs,
                                                     std::span<const std::span<const u64>> rhs,
                                                     const std::vector<std::vector<ProductTerm>>& terms,
                                                     const Prime& p) {
  using detail::kPrimes;
  std::vector<std::size_t> out_len(terms.size(), 0);
  std::size_t longest = 0, weight = 1;
  std::vector<char> need_l(lhs.size(), 0), need_r(rhs.size(), 0);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    std::size_t w = 0;
    for (const auto& t : terms[k]) {
      if (lhs[t.a].empty() || rhs[t.b].empty()) continue;
      out_len[k] = std::max(out_len[k], lhs[t.a].size() + rhs[t.b].size() - 1);
      w += std::min(lhs[t.a].size(), rhs[t.b].size());
      need_l[t.a] = need_r[t.b] = 1;
    }
    longest = std::max(longest, out_len[k]);
    weight = std::max(weight, w);
  }
  std::vector<std::vector<u64>> result(terms.size());
  if (longest == 0) return result;
  std::size_t n = 1;
  while (n < longest) n <<= 1;
  if (n > (std::size_t{1} << detail::kMaxLog)) {
    throw Error(ErrorCode::BudgetExceeded, "convolution length exceeds 2^40");
  }
  const int nprimes = detail::primes_needed(p.value(), weight);

  // residues[k][i]: output k modulo transform prime i
  std::vector<std::array<std::vector<u64>, 3>> residues(terms.size());
  std::vector<std::vector<u64>> fl(lhs.size()), fr(rhs.size());
  for (int which = 0; which < nprimes; ++which) {
    const auto& tp = kPrimes[which];
    const detail::Mont mt(tp.modulus);
    auto forward = [&](std::span<const u64> src, std::vector<u64>& dst) {
      dst.assign(n, 0);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = mt.to(src[i]);
      detail::transform(dst, mt, which, tp.generator, false);
    };
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (need_l[i]) forward(lhs[i], fl[i]);
    }
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (!need_r[j]) continue;
      // reuse a left transform when the same sequence appears on both sides
      bool shared = false;
      for (std::size_t i = 0; i < lhs.size() && !shared; ++i) {
        if (need_l[i] && lhs[i].data() == rhs[j].data() && lhs[i].size() == rhs[j].size()) {
          fr[j] = fl[i];
          shared = true;
        }
      }
      if (!shared) forward(rhs[j], fr[j]);
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (out_len[k] == 0) continue;
      std::vector<u64> acc(n, 0);
      for (const auto& t : terms[k]) {
        if (lhs[t.a].empty() || rhs[t.b].empty()) continue;
        const auto& x = fl[t.a];
        const auto& y = fr[t.b];
        for (std::size_t i = 0; i < n; ++i) acc[i] = mt.add(acc[i], mt.mul(x[i], y[i]));
      }
      detail::transform(acc, mt, which, tp.generator, true);
      acc.resize(out_len[k]);
      for (auto& v : acc) v = mt.from(v);
      residues[k][which] = std::move(acc);
    }
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (out_len[k] != 0) detail::garner(residues[k], nprimes, p, result[k]);
  }
  return result;
}

// Exact product of two nonempty residue sequences over F_p.
inline std::vector<u64> convolve_mod(std::span<const u64> a, std::span<const u64> b,
                                     const Prime& p) {
  const std::array<std::span<const u64>, 1> l{a}, r{b};
  const std::vector<std::vector<ProductTerm>> terms{{{0, 0}}};
  return std::move(sum_of_products(l, r, terms, p)[0]);
}

}  // namespace steplab::ntt

#endif  // STEPLAB_NTT_HPP
