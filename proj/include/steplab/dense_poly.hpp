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

#ifndef STEPLAB_DENSE_POLY_HPP
#define STEPLAB_DENSE_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "steplab/error.hpp"
#include "steplab/ntt.hpp"
#include "steplab/prime.hpp"

namespace steplab {

/////////////////////////////////////
// Dense univariate polynomials   //
/////////////////////////////////////

// Coefficient i is the coefficient of x^i.  The stored sequence never has a
// trailing zero, so the zero polynomial is the empty sequence and has no
// integer degree.
class DensePoly {
 public:
  explicit DensePoly(Prime p) : p_(p) {}

  // Reduces every entry mod p and strips trailing zeros.
  DensePoly(Prime p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x = p_.reduce(x);
    trim();
  }

  DensePoly(Prime p, std::initializer_list<u64> coeffs)
      : DensePoly(p, std::vector<u64>(coeffs)) {}

  static DensePoly constant(Prime p, u64 c) { return DensePoly(p, std::vector<u64>{c}); }

  static DensePoly monomial(Prime p, u64 c, std::size_t exponent) {
    c = p.reduce(c);
    if (c == 0) return DensePoly(p);
    std::vector<u64> v(exponent + 1, 0);
    v[exponent] = c;
    return from_canonical(p, std::move(v));
  }

  // x - a
  static DensePoly linear_root(Prime p, u64 a) {
    return from_canonical(p, {p.neg(p.reduce(a)), 1});
  }

  // Skips reduction; entries must already lie in [0, p).
  static DensePoly from_canonical(Prime p, std::vector<u64> coeffs) {
    DensePoly r(p);
    r.c_ = std::move(coeffs);
    r.trim();
    return r;
  }

  const Prime& modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::optional<std::size_t> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  // Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
  std::size_t size() const noexcept { return c_.size(); }
  std::span<const u64> coeffs() const noexcept { return c_; }
  const std::vector<u64>& vec() const noexcept { return c_; }
  u64 coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  u64 leading() const noexcept { return c_.empty() ? 0 : c_.back(); }

  u64 eval(u64 x) const noexcept {
    u64 r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = p_.mul_add(r, x, c_[i]);
    return r;
  }
  FieldElement eval(const FieldElement& x) const {
    require_same(x.modulus());
    return FieldElement(eval(x.value()), p_);
  }

  DensePoly& operator+=(const DensePoly& o) {
    require_same(o.p_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = p_.add(c_[i], o.c_[i]);
    trim();
    return *this;
  }
  DensePoly& operator-=(const DensePoly& o) {
    require_same(o.p_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = p_.sub(c_[i], o.c_[i]);
    trim();
    return *this;
  }
  DensePoly operator+(const DensePoly& o) const { return DensePoly(*this) += o; }
  DensePoly operator-(const DensePoly& o) const { return DensePoly(*this) -= o; }
  DensePoly operator-() const {
    DensePoly r(*this);
    for (auto& x : r.c_) x = p_.neg(x);
    return r;
  }

  DensePoly scaled(u64 s) const {
    s = p_.reduce(s);
    if (s == 0) return DensePoly(p_);
    DensePoly r(*this);
    for (auto& x : r.c_) x = p_.mul(x, s);
    return r;
  }

  // this * x^k
  DensePoly shifted(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<u64> v(k, 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return from_canonical(p_, std::move(v));
  }

  // this mod x^n
  DensePoly truncated(std::size_t n) const {
    if (n >= c_.size()) return *this;
    return from_canonical(p_, std::vector<u64>(c_.begin(), c_.begin() + n));
  }

  // floor(this / x^k)
  DensePoly high_part(std::size_t k) const {
    if (k >= c_.size()) return DensePoly(p_);
    return from_canonical(p_, std::vector<u64>(c_.begin() + k, c_.end()));
  }

  DensePoly monic() const {
    if (is_zero()) return *this;
    return scaled(p_.inv(leading()));
  }

  DensePoly derivative() const {
    if (c_.size() <= 1) return DensePoly(p_);
    std::vector<u64> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = p_.mul(c_[i], p_.reduce(i));
    return from_canonical(p_, std::move(v));
  }

  DensePoly derivative(std::size_t n) const {
    DensePoly r(*this);
    for (std::size_t i = 0; i < n && !r.is_zero(); ++i) r = r.derivative();
    return r;
  }

  bool operator==(const DensePoly& o) const noexcept { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const DensePoly& o) const noexcept { return !(*this == o); }

  void require_same(const Prime& q) const {
    if (p_ != q) {
      throw Error(ErrorCode::ModulusMismatch, "polynomials over F_" + std::to_string(p_.value()) +
                                                  " and F_" + std::to_string(q.value()));
    }
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Prime p_;
  std::vector<u64> c_;
};

inline std::ostream& operator<<(std::ostream& os, const DensePoly& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.coeff(i) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << f.coeff(i);
    if (i >= 1) os << "*x";
    if (i >= 2) os << "^" << i;
  }
  return os;
}

// Below this many coefficients in the shorter factor, products are computed
// by the quadratic method.
inline constexpr std::size_t kSchoolbookThreshold = 64;

namespace detail {

inline std::vector<u64> schoolbook(std::span<const u64> a, std::span<const u64> b, const Prime& p) {
  std::vector<u64> out(a.size() + b.size() - 1, 0);
  if (p.value() < (u64{1} << 32)) {
    // products fit in 64 bits; accumulate exactly and reduce once
    std::vector<u128> acc(out.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<u128>(a[i] * b[j]);
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<u64>(acc[k] % p.value());
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = p.mul_add(a[i], b[j], out[i + j]);
    }
  }
  return out;
}

}  // namespace detail

inline DensePoly poly_mul(const DensePoly& f, const DensePoly& g) {
  f.require_same(g.modulus());
  const Prime& p = f.modulus();
  if (f.is_zero() || g.is_zero()) return DensePoly(p);
  if (std::min(f.size(), g.size()) <= kSchoolbookThreshold) {
    return DensePoly::from_canonical(p, detail::schoolbook(f.coeffs(), g.coeffs(), p));
  }
  if (&f == &g) return DensePoly::from_canonical(p, ntt::convolve_mod(f.coeffs(), f.coeffs(), p));
  return DensePoly::from_canonical(p, ntt::convolve_mod(f.coeffs(), g.coeffs(), p));
}

// Quadratic-only product, exposed for cross-checking the transform path.
inline DensePoly poly_mul_schoolbook(const DensePoly& f, const DensePoly& g) {
  f.require_same(g.modulus());
  if (f.is_zero() || g.is_zero()) return DensePoly(f.modulus());
  return DensePoly::from_canonical(f.modulus(), detail::schoolbook(f.coeffs(), g.coeffs(), f.modulus()));
}

inline DensePoly operator*(const DensePoly& f, const DensePoly& g) { return poly_mul(f, g); }

inline DensePoly poly_pow(DensePoly base, std::size_t e) {
  DensePoly r = DensePoly::constant(base.modulus(), 1);
  while (e) {
    if (e & 1) r = poly_mul(r, base);
    e >>= 1;
    if (e) base = poly_mul(base, base);
  }
  return r;
}

// Power series inverse of f modulo x^n; f(0) must be nonzero.
inline DensePoly inverse_series(const DensePoly& f, std::size_t n) {
  const Prime& p = f.modulus();
  if (f.coeff(0) == 0) throw Error(ErrorCode::InversionOfZero, "series with zero constant term");
  DensePoly g = DensePoly::constant(p, p.inv(f.coeff(0)));
  std::size_t k = 1;
  while (k < n) {
    k = std::min(2 * k, n);
    // g <- g * (2 - f g) mod x^k
    DensePoly fg = poly_mul(f.truncated(k), g).truncated(k);
    DensePoly two_minus = DensePoly::constant(p, 2) - fg;
    g = poly_mul(g, two_minus).truncated(k);
  }
  return g;
}

namespace detail {

inline DensePoly reversed(const DensePoly& f, std::size_t len) {
  std::vector<u64> v(len, 0);
  for (std::size_t i = 0; i < len && i < f.size(); ++i) v[len - 1 - i] = f.coeff(i);
  return DensePoly::from_canonical(f.modulus(), std::move(v));
}

inline std::pair<DensePoly, DensePoly> divmod_classical(const DensePoly& a, const DensePoly& b) {
  const Prime& p = a.modulus();
  const std::size_t db = *b.degree();
  if (a.size() <= db) return {DensePoly(p), a};
  std::vector<u64> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<u64> q(a.size() - db, 0);
  const u64 lc_inv = p.inv(b.leading());
  const auto bc = b.coeffs();
  for (std::size_t i = a.size(); i-- > db;) {
    const u64 c = p.mul(r[i], lc_inv);
    q[i - db] = c;
    if (c == 0) continue;
    const u64 nc = p.neg(c);
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = p.mul_add(nc, bc[j], r[i - db + j]);
  }
  r.resize(db);
  return {DensePoly::from_canonical(p, std::move(q)), DensePoly::from_canonical(p, std::move(r))};
}

}  // namespace detail

// Quotient and remainder; b must be nonzero.
inline std::pair<DensePoly, DensePoly> poly_divmod(const DensePoly& a, const DensePoly& b) {
  a.require_same(b.modulus());
  if (b.is_zero()) throw Error(ErrorCode::InversionOfZero, "division by the zero polynomial");
  const std::size_t db = *b.degree();
  if (a.size() <= db) return {DensePoly(a.modulus()), a};
  const std::size_t qlen = a.size() - db;
  if (std::min(qlen, db) <= kSchoolbookThreshold) return detail::divmod_classical(a, b);
  // reversed-quotient via a power-series inverse of rev(b)
  DensePoly rb_inv = inverse_series(detail::reversed(b, db + 1), qlen);
  DensePoly qr = poly_mul(detail::reversed(a, a.size()).truncated(qlen), rb_inv).truncated(qlen);
  DensePoly q = detail::reversed(qr, qlen);
  DensePoly r = (a - poly_mul(q, b)).truncated(db);
  return {std::move(q), std::move(r)};
}

inline DensePoly poly_rem(const DensePoly& a, const DensePoly& b) { return poly_divmod(a, b).second; }

// Reduction modulo a fixed polynomial with the reversed inverse cached.
class PolyModulus {
 public:
  explicit PolyModulus(DensePoly f) : f_(std::move(f)) {
    if (f_.is_zero()) throw Error(ErrorCode::InversionOfZero, "reduction modulo zero");
    n_ = *f_.degree();
    if (n_ > kSchoolbookThreshold) {
      rev_inv_ = inverse_series(detail::reversed(f_, n_ + 1), n_);
    }
  }

  const DensePoly& poly() const noexcept { return f_; }
  std::size_t degree() const noexcept { return n_; }

  // a mod f for deg a <= 2 deg f - 2 (larger inputs fall back to poly_rem).
  DensePoly reduce(const DensePoly& a) const {
    if (a.size() <= n_) return a;
    if (!rev_inv_ || a.size() > 2 * n_ - 1) return poly_rem(a, f_);
    const std::size_t qlen = a.size() - n_;
    DensePoly qr = poly_mul(detail::reversed(a, a.size()).truncated(qlen), rev_inv_->truncated(qlen))
                       .truncated(qlen);
    DensePoly q = detail::reversed(qr, qlen);
    return (a - poly_mul(q, f_)).truncated(n_);
  }

  DensePoly mulmod(const DensePoly& a, const DensePoly& b) const { return reduce(poly_mul(a, b)); }

 private:
  DensePoly f_;
  std::size_t n_ = 0;
  std::optional<DensePoly> rev_inv_;
};

namespace detail {

inline DensePoly gcd_classical(DensePoly a, DensePoly b) {
  while (!b.is_zero()) {
    DensePoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Below this degree the half-gcd recursion switches to plain remainder steps.
inline constexpr std::size_t kHalfGcdThreshold = 128;

// 2x2 polynomial matrix [[a, b], [c, d]] acting on column vectors.
struct PolyMat {
  DensePoly a, b, c, d;

  static PolyMat identity(const Prime& p) {
    return {DensePoly::constant(p, 1), DensePoly(p), DensePoly(p), DensePoly::constant(p, 1)};
  }

  PolyMat operator*(const PolyMat& o) const {
    using T = std::vector<ntt::ProductTerm>;
    auto r = products({&a, &b, &c, &d}, {&o.a, &o.b, &o.c, &o.d},
                      {T{{0, 0}, {1, 2}}, T{{0, 1}, {1, 3}}, T{{2, 0}, {3, 2}}, T{{2, 1}, {3, 3}}});
    return {std::move(r[0]), std::move(r[1]), std::move(r[2]), std::move(r[3])};
  }

  std::pair<DensePoly, DensePoly> apply(const DensePoly& f, const DensePoly& g) const {
    using T = std::vector<ntt::ProductTerm>;
    auto r = products({&a, &b, &c, &d}, {&f, &g}, {T{{0, 0}, {1, 1}}, T{{2, 0}, {3, 1}}});
    return {std::move(r[0]), std::move(r[1])};
  }

 private:
  // Sums of products through shared transforms, or schoolbook when every
  // operand pair is small.
  static std::vector<DensePoly> products(std::vector<const DensePoly*> l, std::vector<const DensePoly*> r,
                                         const std::vector<std::vector<ntt::ProductTerm>>& terms) {
    const Prime& p = l[0]->modulus();
    bool small = true;
    for (const auto& ts : terms)
      for (const auto& t : ts) small = small && std::min(l[t.a]->size(), r[t.b]->size()) <= kSchoolbookThreshold;
    std::vector<DensePoly> out;
    if (small) {
      for (const auto& ts : terms) {
        DensePoly s(p);
        for (const auto& t : ts) s += poly_mul(*l[t.a], *r[t.b]);
        out.push_back(std::move(s));
      }
      return out;
    }
    std::vector<std::span<const u64>> ls, rs;
    for (auto* x : l) ls.push_back(x->coeffs());
    for (auto* x : r) rs.push_back(x->coeffs());
    for (auto& v : ntt::sum_of_products(ls, rs, terms, p)) out.push_back(DensePoly::from_canonical(p, std::move(v)));
    return out;
  }
};

inline bool deg_below(const DensePoly& f, std::size_t m) { return f.is_zero() || *f.degree() < m; }

// One remainder step (f, g) -> (g, f mod g), folded into m from the left.
inline void euclid_step(DensePoly& f, DensePoly& g, PolyMat& m) {
  auto [q, r] = poly_divmod(f, g);
  PolyMat step{DensePoly(f.modulus()), DensePoly::constant(f.modulus(), 1),
               DensePoly::constant(f.modulus(), 1), -q};
  m = step * m;
  f = std::move(g);
  g = std::move(r);
}

// For deg f > deg g, returns M with M (f, g) = (f', g') consecutive
// remainders satisfying deg f' >= ceil(deg f / 2) > deg g'.
inline PolyMat half_gcd(DensePoly f, DensePoly g) {
  const Prime& p = f.modulus();
  const std::size_t m = (*f.degree() + 1) / 2;
  if (deg_below(g, m)) return PolyMat::identity(p);
  if (*f.degree() < kHalfGcdThreshold) {
    PolyMat r = PolyMat::identity(p);
    while (!deg_below(g, m)) euclid_step(f, g, r);
    return r;
  }
  PolyMat r = half_gcd(f.high_part(m), g.high_part(m));
  std::tie(f, g) = r.apply(f, g);
  if (deg_below(g, m)) return r;
  euclid_step(f, g, r);
  if (deg_below(g, m)) return r;
  const std::size_t k = 2 * m - *f.degree();
  return half_gcd(f.high_part(k), g.high_part(k)) * r;
}

inline DensePoly gcd_fast(DensePoly a, DensePoly b) {
  while (!b.is_zero()) {
    if (*a.degree() < kHalfGcdThreshold) return gcd_classical(std::move(a), std::move(b));
    if (*b.degree() < *a.degree()) {
      std::tie(a, b) = half_gcd(a, b).apply(a, b);
      if (b.is_zero()) break;
    }
    DensePoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

// Monic greatest common divisor.  Large inputs go through the half-gcd
// recursion; both paths produce the same Euclidean remainder sequence.
inline DensePoly poly_gcd(const DensePoly& f, const DensePoly& g) {
  f.require_same(g.modulus());
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::GcdOfZeros, "gcd(0, 0) is undefined");
  DensePoly a = f, b = g;
  if (a.size() < b.size()) std::swap(a, b);
  return detail::gcd_fast(std::move(a), std::move(b)).monic();
}

// Classical-only variant, kept for cross-checking.
inline DensePoly poly_gcd_classical(const DensePoly& f, const DensePoly& g) {
  f.require_same(g.modulus());
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::GcdOfZeros, "gcd(0, 0) is undefined");
  DensePoly a = f, b = g;
  if (a.size() < b.size()) std::swap(a, b);
  return detail::gcd_classical(std::move(a), std::move(b)).monic();
}

// x^e mod f by left-to-right square-and-multiply.
inline DensePoly x_pow_mod(u64 e, const PolyModulus& mod) {
  const Prime& p = mod.poly().modulus();
  DensePoly r = mod.reduce(DensePoly::constant(p, 1));
  if (e == 0) return r;
  int top = 63;
  while (((e >> top) & 1) == 0) --top;
  r = mod.reduce(DensePoly::monomial(p, 1, 1));
  for (int bit = top - 1; bit >= 0; --bit) {
    r = mod.mulmod(r, r);
    if ((e >> bit) & 1) r = mod.reduce(r.shifted(1));
  }
  return r;
}

// Residue of x^p modulo f.
inline DensePoly frobenius_powmod(const Prime& p, const DensePoly& f) {
  f.require_same(p);
  if (f.is_zero() || *f.degree() < 1) {
    throw Error(ErrorCode::DegreeTooSmall, "Frobenius residue needs deg f >= 1");
  }
  return x_pow_mod(p.value(), PolyModulus(f));
}

// Number of distinct roots of f in F_p: deg gcd(x^p - x mod f, f).
inline std::size_t count_distinct_roots(const DensePoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root count of the zero polynomial");
  if (*f.degree() == 0) return 0;
  const Prime& p = f.modulus();
  DensePoly h = frobenius_powmod(p, f) - poly_rem(DensePoly::monomial(p, 1, 1), f);
  if (h.is_zero()) return *f.degree();
  return *poly_gcd(f, h).degree();
}

// f(alpha) for every alpha in F_p by Horner's rule.
inline std::vector<u64> eval_all(const DensePoly& f, const WorkBudget& budget = {}) {
  const Prime& p = f.modulus();
  budget.require(static_cast<u64>(p.value()) * std::max<u64>(1, f.size()), "eval_all");
  std::vector<u64> out(p.value());
  for (u64 a = 0; a < p.value(); ++a) out[a] = f.eval(a);
  return out;
}

// Roots of f in F_p in ascending order, by exhaustive evaluation.
inline std::vector<u64> roots_by_evaluation(const DensePoly& f, const WorkBudget& budget = {}) {
  std::vector<u64> vals = eval_all(f, budget);
  std::vector<u64> roots;
  for (u64 a = 0; a < vals.size(); ++a) {
    if (vals[a] == 0) roots.push_back(a);
  }
  return roots;
}

// Largest m with (x - alpha)^m dividing f.
inline std::size_t vanishing_order(const DensePoly& f, u64 alpha) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "vanishing order of the zero polynomial");
  const Prime& p = f.modulus();
  alpha = p.reduce(alpha);
  std::vector<u64> c(f.coeffs().begin(), f.coeffs().end());
  std::size_t order = 0;
  while (c.size() > 1) {
    // synthetic division by (x - alpha)
    std::vector<u64> q(c.size() - 1);
    u64 carry = 0;
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = p.mul_add(carry, alpha, c[i]);
      q[i - 1] = carry;
    }
    const u64 rem = p.mul_add(carry, alpha, c[0]);
    if (rem != 0) break;
    ++order;
    c = std::move(q);
  }
  return order;
}

inline std::size_t vanishing_order(const DensePoly& f, const FieldElement& alpha) {
  f.require_same(alpha.modulus());
  return vanishing_order(f, alpha.value());
}

// Reduces f modulo x^p - x, i.e. x^e -> x^(((e - 1) mod (p - 1)) + 1) for e >= p.
// Agrees with f at every point of F_p.
inline DensePoly reduce_mod_frobenius(const DensePoly& f) {
  const u64 p = f.modulus().value();
  if (f.size() <= p) return f;
  std::vector<u64> v(p, 0);
  for (std::size_t e = 0; e < f.size(); ++e) {
    const std::size_t t = e < p ? e : ((e - 1) % (p - 1)) + 1;
    v[t] = f.modulus().add(v[t], f.coeff(e));
  }
  return DensePoly::from_canonical(f.modulus(), std::move(v));
}

}  // namespace steplab

#endif  // STEPLAB_DENSE_POLY_HPP
