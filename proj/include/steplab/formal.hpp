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

#ifndef STEPLAB_FORMAL_HPP
#define STEPLAB_FORMAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steplab/dense_poly.hpp"
#include "steplab/truncations.hpp"

// Polynomials in F_p[x][z, v_0, ..., v_{m-1}] where z stands for x^p and the
// v_j for a family's truncations:
//   PolyLog(k): v_j = L_{j+1}, j < k
//   PolyExp(k): v_j = E_j, j <= k
//   Bessel:     v_0 = J, v_1 = J'
// z is a constant for d/dx.  Each family has a weight w with w v_j' again
// in the algebra, which gives the step W -> w W' - n w' W on w^n F^(n).

namespace steplab {

using Exponents = std::vector<unsigned>;  // [e_z, e_0, ..., e_{m-1}]

inline void require_formal_family(const FamilyId& f) {
  if (f.tag != FamilyTag::PolyLog && f.tag != FamilyTag::PolyExp && f.tag != FamilyTag::Bessel) {
    throw Error(ErrorCode::UnsupportedFamily, to_string(f) + " has no differential rewrite rules");
  }
  f.validate();
}

inline std::size_t num_vars(const FamilyId& f) {
  switch (f.tag) {
    case FamilyTag::PolyLog: return f.k;
    case FamilyTag::PolyExp: return f.k + 1;
    case FamilyTag::Bessel: return 2;
    default: break;
  }
  throw Error(ErrorCode::UnsupportedFamily, to_string(f) + " has no formal variables");
}

inline std::string var_name(const FamilyId& f, std::size_t j) {
  if (f.tag == FamilyTag::Bessel) return j == 0 ? "u" : "v";
  if (f.tag == FamilyTag::PolyLog) return "y" + std::to_string(j + 1);
  return "y" + std::to_string(j);
}

// Index of the variable whose roots a certificate counts.
inline std::size_t target_var(const FamilyId& f) {
  switch (f.tag) {
    case FamilyTag::PolyLog: return f.k - 1;
    case FamilyTag::PolyExp: return f.k;
    case FamilyTag::Bessel: return 0;
    default: break;
  }
  throw Error(ErrorCode::UnsupportedFamily, to_string(f));
}

class FormalPoly {
 public:
  FormalPoly(Prime p, FamilyId family) : p_(p), family_(family), m_(num_vars(family)) {}

  static FormalPoly constant(Prime p, FamilyId family, const DensePoly& c) {
    FormalPoly r(p, family);
    r.add_term(Exponents(r.m_ + 1, 0), c);
    return r;
  }
  static FormalPoly one(Prime p, FamilyId family) {
    return constant(p, family, DensePoly::constant(p, 1));
  }
  // c * z^ez * prod v_j^{e_j}
  static FormalPoly monomial(Prime p, FamilyId family, Exponents e, const DensePoly& c) {
    FormalPoly r(p, family);
    r.add_term(std::move(e), c);
    return r;
  }
  static FormalPoly variable(Prime p, FamilyId family, std::size_t j) {
    Exponents e(num_vars(family) + 1, 0);
    e[j + 1] = 1;
    return monomial(p, family, std::move(e), DensePoly::constant(p, 1));
  }
  static FormalPoly z(Prime p, FamilyId family) {
    Exponents e(num_vars(family) + 1, 0);
    e[0] = 1;
    return monomial(p, family, std::move(e), DensePoly::constant(p, 1));
  }

  const Prime& modulus() const noexcept { return p_; }
  const FamilyId& family() const noexcept { return family_; }
  std::size_t vars() const noexcept { return m_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Exponents, DensePoly>& terms() const noexcept { return terms_; }

  DensePoly coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? DensePoly(p_) : it->second;
  }

  void add_term(Exponents e, const DensePoly& c) {
    if (c.is_zero()) return;
    c.require_same(p_);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  FormalPoly& operator+=(const FormalPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  FormalPoly& operator-=(const FormalPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  FormalPoly operator+(const FormalPoly& o) const { return FormalPoly(*this) += o; }
  FormalPoly operator-(const FormalPoly& o) const { return FormalPoly(*this) -= o; }

  // Multiplies every coefficient by the x-polynomial c.
  FormalPoly times(const DensePoly& c) const {
    FormalPoly r(p_, family_);
    for (const auto& [e, f] : terms_) r.add_term(e, f * c);
    return r;
  }

  // Multiplies by z^ez * prod v_j^{e_j}.
  FormalPoly times_monomial(const Exponents& shift) const {
    FormalPoly r(p_, family_);
    for (const auto& [e, f] : terms_) {
      Exponents s = e;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
      r.add_term(std::move(s), f);
    }
    return r;
  }

  FormalPoly operator*(const FormalPoly& o) const {
    check(o);
    FormalPoly r(p_, family_);
    for (const auto& [e1, f1] : terms_) {
      for (const auto& [e2, f2] : o.terms_) {
        Exponents s = e1;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += e2[i];
        r.add_term(std::move(s), f1 * f2);
      }
    }
    return r;
  }

  bool operator==(const FormalPoly& o) const {
    return p_ == o.p_ && family_ == o.family_ && terms_ == o.terms_;
  }

  // Largest x-degree over the stored coefficients (nullopt for zero).
  std::optional<std::size_t> max_coeff_degree() const {
    std::optional<std::size_t> d;
    for (const auto& [e, c] : terms_) d = std::max(d.value_or(0), *c.degree());
    return d;
  }

 private:
  void check(const FormalPoly& o) const {
    if (p_ != o.p_) throw Error(ErrorCode::ModulusMismatch, "formal polynomials over different primes");
    if (!(family_ == o.family_)) throw Error(ErrorCode::UnsupportedFamily, "formal polynomials of different families");
  }

  Prime p_;
  FamilyId family_;
  std::size_t m_;
  std::map<Exponents, DensePoly> terms_;
};

/////////////////////////////////////
// Weights and rewrite rules      //
/////////////////////////////////////

// x(1 - x) for PolyLog, x otherwise.
inline DensePoly weight(const Prime& p, const FamilyId& f) {
  require_formal_family(f);
  if (f.tag == FamilyTag::PolyLog) return DensePoly(p, {0, 1, p.value() - 1});
  return DensePoly(p, {0, 1});
}

inline DensePoly weight_derivative(const Prime& p, const FamilyId& f) { return weight(p, f).derivative(); }

// rules[j] = w * v_j' expressed in the algebra.
inline std::vector<FormalPoly> rewrite_rules(const Prime& p, const FamilyId& f) {
  require_formal_family(f);
  const std::size_t m = num_vars(f);
  const u64 neg1 = p.value() - 1;
  const DensePoly one = DensePoly::constant(p, 1);
  const DensePoly x = DensePoly::monomial(p, 1, 1);
  std::vector<FormalPoly> rules;
  auto var = [&](std::size_t j) { return FormalPoly::variable(p, f, j); };
  auto cst = [&](const DensePoly& c) { return FormalPoly::constant(p, f, c); };
  const FormalPoly z = FormalPoly::z(p, f);

  switch (f.tag) {
    case FamilyTag::PolyLog:
      // w L_1' = x - x^p;  w L_i' = (1 - x) L_{i-1}
      rules.push_back(cst(x) - z);
      for (std::size_t j = 1; j < m; ++j) rules.push_back(var(j - 1).times(DensePoly(p, {1, neg1})));
      break;
    case FamilyTag::PolyExp:
      // x E_0' = x E_0 + x^p;  x E_1' = E_0 - 1;  x E_i' = E_{i-1}
      rules.push_back(var(0).times(x) + z);
      if (m > 1) rules.push_back(var(0) - cst(one));
      for (std::size_t j = 2; j < m; ++j) rules.push_back(var(j - 1));
      break;
    case FamilyTag::Bessel: {
      // x J' = x v;  x J'' = -J' - x J + c x^2 x^p
      rules.push_back(var(1).times(x));
      const u64 c = bessel_constant(p);
      rules.push_back(cst(DensePoly(p)) - var(1) - var(0).times(x) + z.times(DensePoly::monomial(p, c, 2)));
      break;
    }
    default:
      throw Error(ErrorCode::UnsupportedFamily, to_string(f));
  }
  return rules;
}

// Applies W -> w dW/dx - n w' W.  Pass precomputed rules to avoid rebuilding
// them on every step.
inline FormalPoly derive_step(const FormalPoly& W, std::size_t n, const std::vector<FormalPoly>& rules) {
  const Prime& p = W.modulus();
  const FamilyId& f = W.family();
  const DensePoly w = weight(p, f);
  const DensePoly nw1 = weight_derivative(p, f).scaled(p.neg(p.reduce(n)));
  FormalPoly out(p, f);
  for (const auto& [e, c] : W.terms()) {
    // w c' for the x-dependence, then the chain rule through each variable
    out.add_term(e, w * c.derivative() + nw1 * c);
    for (std::size_t j = 0; j < W.vars(); ++j) {
      const unsigned ej = e[j + 1];
      if (ej == 0) continue;
      Exponents rest = e;
      rest[j + 1] -= 1;
      out += rules[j].times_monomial(rest).times(c.scaled(ej));
    }
  }
  return out;
}

inline FormalPoly derive_step(const FormalPoly& W, std::size_t n) {
  return derive_step(W, n, rewrite_rules(W.modulus(), W.family()));
}

// derive_step applied `steps` times starting from order `start`.
inline FormalPoly derive_iterated(FormalPoly W, std::size_t steps, std::size_t start = 0) {
  const auto rules = rewrite_rules(W.modulus(), W.family());
  for (std::size_t n = start; n < start + steps; ++n) W = derive_step(W, n, rules);
  return W;
}

// The polynomial each variable stands for.
inline std::vector<DensePoly> family_values(const Prime& p, const FamilyId& f) {
  require_formal_family(f);
  std::vector<DensePoly> v;
  switch (f.tag) {
    case FamilyTag::PolyLog:
      for (unsigned i = 1; i <= f.k; ++i) v.push_back(gen_polylog(p, i));
      break;
    case FamilyTag::PolyExp:
      for (unsigned i = 0; i <= f.k; ++i) v.push_back(gen_polyexp(p, i));
      break;
    default: {
      DensePoly j = gen_bessel(p);
      v.push_back(j);
      v.push_back(j.derivative());
    }
  }
  return v;
}

// Substitutes z -> x^p and v_j -> its truncation, and expands.
inline DensePoly realize(const FormalPoly& W, const WorkBudget& budget = {}) {
  const Prime& p = W.modulus();
  const std::vector<DensePoly> vals = family_values(p, W.family());
  std::vector<std::vector<DensePoly>> powers(vals.size());
  auto power = [&](std::size_t j, unsigned e) -> const DensePoly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(DensePoly::constant(p, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * vals[j]);
    return cache[e];
  };
  std::size_t top = 0;
  for (const auto& [e, c] : W.terms()) {
    std::size_t d = *c.degree() + p.value() * e[0];
    for (std::size_t j = 0; j < vals.size(); ++j) d += e[j + 1] * *vals[j].degree();
    top = std::max(top, d);
  }
  budget.require(top + 1, "realize");
  DensePoly out(p);
  for (const auto& [e, c] : W.terms()) {
    DensePoly t = c.shifted(p.value() * e[0]);
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (e[j + 1]) t = t * power(j, e[j + 1]);
    }
    out += t;
  }
  return out;
}

/////////////////////////////////////
// Identity verification          //
/////////////////////////////////////

// W = a + b (x^p - x) + sum_i c_i v_i for a W linear in z and the variables.
struct CoeffTriple {
  DensePoly a, b;
  std::vector<DensePoly> c;  // indexed by variable
  bool affine = true;        // false when W has a term of total degree >= 2
};

inline CoeffTriple coeff_triple(const FormalPoly& W) {
  const Prime& p = W.modulus();
  CoeffTriple t{DensePoly(p), DensePoly(p), std::vector<DensePoly>(W.vars(), DensePoly(p))};
  DensePoly a0(p), a1(p);
  for (const auto& [e, c] : W.terms()) {
    unsigned total = 0;
    for (unsigned v : e) total += v;
    if (total == 0) {
      a0 = c;
    } else if (total >= 2) {
      t.affine = false;
    } else if (e[0] == 1) {
      a1 = c;
    } else {
      for (std::size_t j = 0; j < W.vars(); ++j)
        if (e[j + 1] == 1) t.c[j] = c;
    }
  }
  t.b = a1;
  t.a = a0 + a1.shifted(1);
  return t;
}

inline DensePoly realize_triple(const CoeffTriple& t, const Prime& p, const std::vector<DensePoly>& vals) {
  DensePoly out = t.a + t.b * (DensePoly::monomial(p, 1, p.value()) - DensePoly::monomial(p, 1, 1));
  for (std::size_t j = 0; j < t.c.size(); ++j) {
    if (!t.c[j].is_zero()) out += t.c[j] * vals[j];
  }
  return out;
}

// Degree of f as a signed integer, -1 for the zero polynomial (reporting only).
inline long signed_degree(const DensePoly& f) { return f.is_zero() ? -1 : static_cast<long>(*f.degree()); }

struct OdeStep {
  unsigned k = 0;
  std::size_t n = 0;
  bool exact = false;  // realize(W_n) == w^n f^(n)
  long deg_a = -1, deg_b = -1;
  std::vector<long> deg_c;  // per variable
  long bound_a = 0, bound_b = 0, bound_c = 0;
  bool a_bound_asserted = true;
  bool bounds_ok = true;
  bool pass() const { return exact && bounds_ok; }
};

struct BesselChecks {
  u64 constant = 0;
  bool full_identity = false;   // x J'' + J' + x J == c x^{p+2}
  bool mod_xp_identity = false; // J'' + J'/x + J == 0 mod x^p
  bool u_rule = false;          // realize(x u') == x J'
  bool v_rule = false;          // realize(x v') == x J''
  bool pass() const { return full_identity && mod_xp_identity && u_rule && v_rule; }
};

struct OdeReport {
  FamilyId family;
  u64 p = 0;
  std::size_t nmax = 0;
  std::vector<OdeStep> steps;
  std::optional<BesselChecks> bessel;
  bool pass() const {
    for (const auto& s : steps)
      if (!s.pass()) return false;
    return !bessel || bessel->pass();
  }
};

namespace detail {

inline BesselChecks bessel_checks(const Prime& p) {
  const FamilyId f = FamilyId::bessel();
  BesselChecks b;
  b.constant = bessel_constant(p);
  const DensePoly J = gen_bessel(p), J1 = J.derivative(), J2 = J1.derivative();
  const DensePoly x = DensePoly::monomial(p, 1, 1);
  const DensePoly lhs = x * J2 + J1 + x * J;
  b.full_identity = lhs == DensePoly::monomial(p, b.constant, p.value() + 2);
  b.mod_xp_identity = lhs.truncated(p.value() + 1).is_zero();
  const auto rules = rewrite_rules(p, f);
  b.u_rule = realize(rules[0]) == x * J1;
  b.v_rule = realize(rules[1]) == x * J2;
  return b;
}

}  // namespace detail

// Checks w^n f^(n) against the engine for the family member f and every
// n = 1..nmax, recording the degrees of the coefficient decomposition.
// PolyLog bounds: a <= n+1, b <= n-1, c <= n.  PolyExp: b <= n-1, c <= n,
// a recorded only.  Bessel: exactness only, plus the closed-form identities.
inline OdeReport verify_ode_identity(const FamilyId& f, const Prime& p, std::size_t nmax) {
  require_formal_family(f);
  if (nmax < 1) throw Error(ErrorCode::InvalidOrder, "nmax must be at least 1");
  OdeReport rep{f, p.value(), nmax, {}, std::nullopt};
  const auto rules = rewrite_rules(p, f);
  const std::vector<DensePoly> vals = family_values(p, f);
  const std::size_t tv = target_var(f);
  const DensePoly& target = vals[tv];
  const DensePoly w = weight(p, f);

  FormalPoly W = FormalPoly::variable(p, f, tv);
  DensePoly deriv = target;
  DensePoly wn = DensePoly::constant(p, 1);
  for (std::size_t n = 1; n <= nmax; ++n) {
    W = derive_step(W, n - 1, rules);
    deriv = deriv.derivative();
    wn = wn * w;
    OdeStep s;
    s.k = f.k;
    s.n = n;
    s.exact = realize(W) == wn * deriv;
    const CoeffTriple t = coeff_triple(W);
    s.deg_a = signed_degree(t.a);
    s.deg_b = signed_degree(t.b);
    for (const auto& c : t.c) s.deg_c.push_back(signed_degree(c));
    const long nl = static_cast<long>(n);
    if (f.tag != FamilyTag::Bessel) {
      s.bound_a = f.tag == FamilyTag::PolyLog ? nl + 1 : nl;
      s.bound_b = nl - 1;
      s.bound_c = nl;
      s.a_bound_asserted = f.tag == FamilyTag::PolyLog;
      s.bounds_ok = t.affine && s.deg_b <= s.bound_b;
      if (s.a_bound_asserted) s.bounds_ok = s.bounds_ok && s.deg_a <= s.bound_a;
      for (long d : s.deg_c) s.bounds_ok = s.bounds_ok && d <= s.bound_c;
    } else {
      s.a_bound_asserted = false;
    }
    rep.steps.push_back(std::move(s));
  }
  if (f.tag == FamilyTag::Bessel) rep.bessel = detail::bessel_checks(p);
  return rep;
}

/////////////////////////////////////
// Printed coefficient recurrences //
/////////////////////////////////////

struct RecurrenceStep {
  std::size_t n = 0;
  CoeffTriple printed;
  CoeffTriple engine;
  bool agrees = false;            // printed == engine coefficientwise
  bool printed_reproduces = false;  // printed triple realizes to w^n f^(n)
  bool engine_reproduces = false;
  std::vector<std::string> divergences;  // names of differing coefficients
};

struct RecurrenceReport {
  FamilyId family;
  u64 p = 0;
  std::vector<RecurrenceStep> steps;
};

namespace detail {

inline bool same_triple(const CoeffTriple& x, const CoeffTriple& y, const FamilyId& f,
                        std::vector<std::string>& diff) {
  if (x.a != y.a) diff.push_back("a");
  if (x.b != y.b) diff.push_back("b");
  for (std::size_t j = 0; j < x.c.size(); ++j) {
    if (x.c[j] != y.c[j]) diff.push_back("c_" + var_name(f, j).substr(1));
  }
  return diff.empty();
}

}  // namespace detail

// Iterates the coefficient recurrences as printed from the printed base case
// (k >= 2), alongside the engine's decomposition.  For PolyLog:
//   a+ = w(a' - b) - n w' a
//   b+ = w b' + c_1 - n w' b
//   c_i+ = w c_i' + (1-x) c_{i+1} - n w' c_i,   c_{k-1}+ = w c_{k-1}' - n w' c_{k-1}
// For PolyExp (w = x):
//   a+ = x a' + x b + x c_0 + sum_{i=0}^{k-2} c_{i+1} - n a
//   b+ = x b' + c_0 - n b
//   c_0+ = x c_0 + c_1 - n c_0
//   c_i+ = x c_i' + c_{i+1} - n c_i,   c_{k-1}+ = x c_{k-1}' - n c_{k-1}
// The variable slot of the target itself (y_k) stays zero.
inline RecurrenceReport lemma_coeffs(const FamilyId& f, const Prime& p, std::size_t nmax) {
  require_formal_family(f);
  if (f.tag == FamilyTag::Bessel) throw Error(ErrorCode::UnsupportedFamily, "no printed recurrence for J0");
  if (f.k < 2) throw Error(ErrorCode::InvalidOrder, "printed recurrences start at k = 2");
  if (nmax < 1) throw Error(ErrorCode::InvalidOrder, "nmax must be at least 1");
  const std::size_t m = num_vars(f);
  const bool log = f.tag == FamilyTag::PolyLog;
  // slot of c_i: PolyLog c_i is y_i at index i-1; PolyExp c_i is y_i at index i
  auto slot = [&](std::size_t i) { return log ? i - 1 : i; };
  const std::size_t first = log ? 1 : 0;  // smallest c index
  const std::size_t last = f.k - 1;       // c_{k-1}

  const DensePoly x = DensePoly::monomial(p, 1, 1);
  const DensePoly one_minus_x(p, {1, p.value() - 1});
  const DensePoly w = weight(p, f), w1 = weight_derivative(p, f);
  const std::vector<DensePoly> vals = family_values(p, f);
  const auto rules = rewrite_rules(p, f);

  CoeffTriple cur{DensePoly(p), DensePoly(p), std::vector<DensePoly>(m, DensePoly(p))};
  cur.c[slot(last)] = log ? one_minus_x : DensePoly::constant(p, 1);
  FormalPoly W = derive_step(FormalPoly::variable(p, f, target_var(f)), 0, rules);
  DensePoly deriv = vals[target_var(f)].derivative();
  DensePoly wn = w;

  RecurrenceReport rep{f, p.value(), {}};
  for (std::size_t n = 1; n <= nmax; ++n) {
    if (n > 1) {
      const std::size_t k = n - 1;  // order being stepped from
      const u64 nk = p.reduce(k);
      const DensePoly nw1 = w1.scaled(nk);
      CoeffTriple nx{DensePoly(p), DensePoly(p), std::vector<DensePoly>(m, DensePoly(p))};
      const auto& c = cur.c;
      if (log) {
        nx.a = w * (cur.a.derivative() - cur.b) - nw1 * cur.a;
        nx.b = w * cur.b.derivative() + c[slot(1)] - nw1 * cur.b;
        for (std::size_t i = first; i < last; ++i)
          nx.c[slot(i)] = w * c[slot(i)].derivative() + one_minus_x * c[slot(i + 1)] - nw1 * c[slot(i)];
      } else {
        DensePoly sum(p);
        for (std::size_t i = 0; i + 2 <= f.k; ++i) sum += c[slot(i + 1)];
        nx.a = x * cur.a.derivative() + x * cur.b + x * c[slot(0)] + sum - cur.a.scaled(nk);
        nx.b = x * cur.b.derivative() + c[slot(0)] - cur.b.scaled(nk);
        nx.c[slot(0)] = x * c[slot(0)] + c[slot(1)] - c[slot(0)].scaled(nk);
        for (std::size_t i = 1; i < last; ++i)
          nx.c[slot(i)] = x * c[slot(i)].derivative() + c[slot(i + 1)] - c[slot(i)].scaled(nk);
      }
      nx.c[slot(last)] = w * c[slot(last)].derivative() - nw1 * c[slot(last)];
      cur = std::move(nx);
      W = derive_step(W, k, rules);
      deriv = deriv.derivative();
      wn = wn * w;
    }
    RecurrenceStep s{.n = n, .printed = cur, .engine = coeff_triple(W), .divergences = {}};
    s.agrees = detail::same_triple(s.printed, s.engine, f, s.divergences);
    const DensePoly direct = wn * deriv;
    s.printed_reproduces = realize_triple(s.printed, p, vals) == direct;
    s.engine_reproduces = s.engine.affine && realize_triple(s.engine, p, vals) == direct;
    rep.steps.push_back(std::move(s));
  }
  return rep;
}

/////////////////////////////////////
// x^l L_j^(l) decomposition      //
/////////////////////////////////////

struct Eq9Report {
  u64 p = 0;
  unsigned j = 0;
  std::size_t l = 0;
  DensePoly g;                 // x^l L_j^(l) - (-1)^(l-1) (l-1)! L_{j-1}
  bool identity_exact = false; // engine decomposition realizes to (1-x)^l g
  bool leading_cancels = false;  // no y_{j-1} or y_j term survives
  bool support_ok = false;     // only 1, y_1..y_{j-2}, z
  std::size_t denominator_exponent = 0;  // power of (1-x) left after exact division
  long max_coeff_degree = -1;  // after division
  CoeffTriple decomposition;   // coefficients of g after division
  bool pass() const {
    return identity_exact && leading_cancels && support_ok && denominator_exponent == 0 &&
           max_coeff_degree <= static_cast<long>(l);
  }
};

// Decomposes g_{j,l} through the PolyLog(j) engine: W_l = (x(1-x))^l L_j^(l),
// so (1-x)^l g = W_l - (-1)^(l-1) (l-1)! (1-x)^l y_{j-1}.  The coefficients
// are then divided by (1-x) as long as the division is exact.
inline Eq9Report verify_eq9(const Prime& p, unsigned j, std::size_t l) {
  if (j < 2) throw Error(ErrorCode::InvalidOrder, "j must be at least 2");
  if (l < 1 || l >= p.value()) throw Error(ErrorCode::InvalidOrder, "l must satisfy 1 <= l < p");
  const FamilyId f = FamilyId::polylog(j);
  // (-1)^(l-1) (l-1)!
  u64 fct = 1;
  for (std::size_t i = 2; i < l; ++i) fct = p.mul(fct, p.reduce(i));
  if ((l - 1) % 2) fct = p.neg(fct);

  const DensePoly Lj = gen_polylog(p, j), Lj1 = gen_polylog(p, j - 1);
  Eq9Report rep{.p = p.value(),
                .j = j,
                .l = l,
                .g = Lj.derivative(l).shifted(l) - Lj1.scaled(fct),
                .decomposition = {DensePoly(p), DensePoly(p), {}}};

  const DensePoly omx(p, {1, p.value() - 1});
  const DensePoly omx_l = poly_pow(omx, l);
  FormalPoly G = derive_iterated(FormalPoly::variable(p, f, j - 1), l);
  G -= FormalPoly::variable(p, f, j - 2).times(omx_l.scaled(fct));
  rep.identity_exact = realize(G) == omx_l * rep.g;

  rep.leading_cancels = true;
  rep.support_ok = true;
  for (const auto& [e, c] : G.terms()) {
    unsigned total = 0;
    for (unsigned v : e) total += v;
    if (e[j] != 0 || e[j - 1] != 0) rep.leading_cancels = false;
    if (total > 1) rep.support_ok = false;
  }
  rep.support_ok = rep.support_ok && rep.leading_cancels;

  CoeffTriple t = coeff_triple(G);
  std::size_t divided = 0;
  auto all_divisible = [&]() {
    auto ok = [&](const DensePoly& q) { return q.is_zero() || q.eval(1) == 0; };
    if (!ok(t.a) || !ok(t.b)) return false;
    for (const auto& c : t.c)
      if (!ok(c)) return false;
    return true;
  };
  auto div = [&](DensePoly& q) {
    if (!q.is_zero()) q = poly_divmod(q, omx).first;
  };
  while (divided < l && all_divisible()) {
    div(t.a);
    div(t.b);
    for (auto& c : t.c) div(c);
    ++divided;
  }
  rep.denominator_exponent = l - divided;
  long md = std::max(signed_degree(t.a), signed_degree(t.b));
  for (const auto& c : t.c) md = std::max(md, signed_degree(c));
  rep.max_coeff_degree = md;
  rep.decomposition = std::move(t);
  return rep;
}

}  // namespace steplab

#endif  // STEPLAB_FORMAL_HPP
