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

#ifndef STEPLAB_STEPANOV_HPP
#define STEPLAB_STEPANOV_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "steplab/formal.hpp"
#include "steplab/linalg.hpp"

namespace steplab {

using BigInt = boost::multiprecision::cpp_int;

// Number of (c_1..c_k) >= 0 with sum i*c_i <= C.  S(C, 0) = 1.
inline u64 count_weighted_tuples(unsigned C, unsigned k) {
  std::vector<u64> ways(C + 1, 0);
  ways[0] = 1;
  for (unsigned i = 1; i <= k; ++i) {
    for (unsigned s = i; s <= C; ++s) ways[s] += ways[s - i];
  }
  u64 total = 0;
  for (u64 w : ways) total += w;
  return total;
}

// The same tuples, in lexicographic order.
inline std::vector<std::vector<unsigned>> weighted_tuples(unsigned C, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(k, 0);
  auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (unsigned c = 0; c * (i + 1) <= left; ++c) {
      cur[i] = c;
      self(self, i + 1, left - c * (i + 1));
    }
    cur[i] = 0;
  };
  rec(rec, 0, C);
  return out;
}

struct StepanovParams {
  u64 A = 0, B = 0, C = 0, D = 0;
  std::optional<u64> E;  // PolyExp(k >= 1) only
  std::optional<u64> n;  // Bessel only

  bool operator==(const StepanovParams&) const = default;
};

inline std::string to_string(const StepanovParams& s) {
  std::string out = "(A=" + std::to_string(s.A) + ",B=" + std::to_string(s.B) + ",C=" + std::to_string(s.C) +
                    ",D=" + std::to_string(s.D);
  if (s.E) out += ",E=" + std::to_string(*s.E);
  if (s.n) out += ",n=" + std::to_string(*s.n);
  return out + ")";
}

struct InequalityCheck {
  std::string name;  // "lhs < rhs" in symbols
  BigInt lhs, rhs;
  bool holds;
};

struct InequalityReport {
  std::vector<InequalityCheck> checks;
  bool feasible() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
  }
};

inline void require_certifiable(const FamilyId& f) {
  if (f.tag != FamilyTag::PolyLog && f.tag != FamilyTag::PolyExp && f.tag != FamilyTag::Bessel) {
    throw Error(ErrorCode::UnsupportedFamily, "no auxiliary-polynomial construction for " + to_string(f));
  }
  f.validate();
}

// Orders (PolyLog(1), PolyExp(0)) share the simplest inequality.
inline bool is_first_order(const FamilyId& f) {
  return (f.tag == FamilyTag::PolyLog && f.k == 1) || (f.tag == FamilyTag::PolyExp && f.k == 0);
}

inline InequalityReport check_inequalities(const FamilyId& f, u64 p, const StepanovParams& s) {
  require_certifiable(f);
  InequalityReport r;
  auto add = [&](std::string name, BigInt lhs, BigInt rhs) {
    const bool ok = lhs < rhs;
    r.checks.push_back({std::move(name), std::move(lhs), std::move(rhs), ok});
  };
  const BigInt A = s.A, B = s.B, C = s.C, D = s.D, P = p;
  u64 smallest = std::min({s.A, s.B, s.C, s.D});
  if (f.tag == FamilyTag::PolyExp && f.k >= 1) smallest = std::min(smallest, s.E.value_or(0));
  if (f.tag == FamilyTag::Bessel) smallest = std::min(smallest, s.n.value_or(0));
  add("0 < min(params)", 0, smallest);
  add("D < p", D, P);

  if (is_first_order(f)) {
    add("D(A+2D+C) < ABC", D * (A + 2 * D + C), A * B * C);
  } else if (f.tag == FamilyTag::PolyLog) {
    const unsigned c = static_cast<unsigned>(s.C);
    const BigInt s0 = count_weighted_tuples(c, f.k - 1), s1 = count_weighted_tuples(c, f.k);
    add("D(A+B+2D)S(C,k-1) < AB S(C,k)", D * (A + B + 2 * D) * s0, A * B * s1);
    add("A 4^C < p-1", A * boost::multiprecision::pow(BigInt(4), c), P - 1);
  } else if (f.tag == FamilyTag::PolyExp) {
    const unsigned c = static_cast<unsigned>(s.C);
    const BigInt E = s.E.value_or(0);
    const BigInt s0 = count_weighted_tuples(c, f.k - 1), s1 = count_weighted_tuples(c, f.k);
    add("D(A+B+D)(E+D)S(C,k-1) < ABE S(C,k)", D * (A + B + D) * (E + D) * s0, A * B * E * s1);
    add("(A+1)(E+A+2)6^C < p-1", (A + 1) * (E + A + 2) * boost::multiprecision::pow(BigInt(6), c), P - 1);
  } else {
    const BigInt n = s.n.value_or(0);
    add("n^3 < p", n * n * n, P);
    add("max(2(A+1)C, 2C^2) < n", std::max<BigInt>(2 * (A + 1) * C, 2 * C * C), n);
    add("2D(A+B+2D) < AB(C+2)", 2 * D * (A + B + 2 * D), A * B * (C + 2));
  }
  return r;
}

namespace detail {

// Largest m with m^s <= v.
inline u64 floor_root(const BigInt& v, unsigned s) {
  u64 lo = 0, hi = 1;
  while (boost::multiprecision::pow(BigInt(hi), s) <= v) hi *= 2;
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    (boost::multiprecision::pow(BigInt(mid), s) <= v ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

// The closed-form asymptotic choices, before any feasibility adjustment.
inline StepanovParams seed_params(const FamilyId& f, u64 p) {
  require_certifiable(f);
  using detail::floor_root;
  const BigInt P = p;
  StepanovParams s;
  if (is_first_order(f)) {
    s.A = floor_root(P * P, 3);
    s.B = s.C = floor_root(P, 3);
    s.D = s.A / 3;
  } else if (f.tag == FamilyTag::Bessel) {
    s.n = floor_root(P, 3) / 2;
    s.A = floor_root(P * P, 9) / 5;
    s.B = floor_root(boost::multiprecision::pow(BigInt(23), 9) * P, 9);
    s.C = floor_root(P, 9);
    s.D = floor_root(P * P, 9);
  } else {
    const double l = std::log(static_cast<double>(p));
    s.A = s.D = std::max<u64>(1, static_cast<u64>(l * l));
    s.B = s.A;
    const double room = static_cast<double>(p - 1) / static_cast<double>(s.A);
    const double base = f.tag == FamilyTag::PolyLog ? 4.0 : 6.0;
    s.C = std::max<u64>(1, static_cast<u64>(std::log(std::max(room, 1.0)) / std::log(base)));
    if (f.tag == FamilyTag::PolyExp) s.E = std::max<u64>(1, static_cast<u64>(std::pow(l, 1.5)));
  }
  return s;
}

/////////////////////////////////////
// Columns and constraint rows     //
/////////////////////////////////////

inline std::vector<u64> excluded_points(const FamilyId& f) {
  if (f.tag == FamilyTag::PolyLog) return {0, 1};
  return {0};
}

// y-monomials allowed in the auxiliary polynomial, sorted.
inline std::vector<Exponents> column_monomials(const FamilyId& f, const StepanovParams& s) {
  require_certifiable(f);
  const std::size_t m = num_vars(f);
  const unsigned C = static_cast<unsigned>(s.C);
  std::vector<Exponents> out;
  if (f.tag == FamilyTag::PolyLog) {
    for (const auto& t : weighted_tuples(C, f.k)) {
      Exponents e(m + 1, 0);
      std::copy(t.begin(), t.end(), e.begin() + 1);
      out.push_back(std::move(e));
    }
  } else if (f.tag == FamilyTag::PolyExp && f.k == 0) {
    for (unsigned c = 0; c <= C; ++c) out.push_back({0, c});
  } else if (f.tag == FamilyTag::PolyExp) {
    const unsigned E = static_cast<unsigned>(s.E.value_or(0));
    for (unsigned e0 = 0; e0 <= E; ++e0) {
      for (const auto& t : weighted_tuples(C, f.k)) {
        Exponents e(m + 1, 0);
        e[1] = e0;
        std::copy(t.begin(), t.end(), e.begin() + 2);
        out.push_back(std::move(e));
      }
    }
  } else {
    for (unsigned cu = 0; cu <= C; ++cu)
      for (unsigned cv = 0; cu + cv <= C; ++cv) out.push_back({0, cu, cv});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Column j <-> (a, b, monos[m]) with j = (a B + b) |monos| + m.
struct ColumnSpace {
  FamilyId family;
  u64 A, B;
  std::vector<Exponents> monos;

  std::size_t size() const { return static_cast<std::size_t>(A * B) * monos.size(); }
  std::size_t index(u64 a, u64 b, std::size_t m) const {
    return static_cast<std::size_t>(a * B + b) * monos.size() + m;
  }
};

struct RowKey {
  std::size_t n;  // derivative order
  Exponents mono;
  u64 xpow;
  auto operator<=>(const RowKey&) const = default;
};

struct ConstraintSystem {
  ColumnSpace columns;
  std::vector<RowKey> rows;
  Matrix matrix;
};

inline u64 reduce_exponent(u64 t, u64 p) { return t < p ? t : ((t - 1) % (p - 1)) + 1; }

inline ConstraintSystem build_constraints(const FamilyId& f, const Prime& p, const StepanovParams& s,
                                          const WorkBudget& budget = {}) {
  require_certifiable(f);
  if (s.D >= p.value()) throw Error(ErrorCode::Infeasible, "D must be below p");
  ColumnSpace cols{f, s.A, s.B, column_monomials(f, s)};
  const std::size_t M = cols.monos.size();
  budget.require(cols.size(), "constraint columns");
  const auto rules = rewrite_rules(p, f);
  const std::size_t tv = target_var(f) + 1;
  const u64 q = p.value();

  struct Entry {
    std::uint32_t n, mono;
    u64 t0, val;
  };
  std::map<Exponents, std::uint32_t> ids;
  std::vector<Exponents> row_monos;
  std::vector<std::vector<Entry>> contrib(static_cast<std::size_t>(s.A) * M);
  u64 work = 0;
  for (u64 a = 0; a < s.A; ++a) {
    for (std::size_t m = 0; m < M; ++m) {
      auto& out = contrib[a * M + m];
      FormalPoly W = FormalPoly::monomial(p, f, cols.monos[m], DensePoly::monomial(p, 1, a));
      for (std::size_t n = 0; n < s.D; ++n) {
        if (n > 0) W = derive_step(W, n - 1, rules);
        for (const auto& [e, c] : W.terms()) {
          if (e[tv] != 0) continue;
          Exponents r = e;
          r[0] = 0;
          auto [it, fresh] = ids.try_emplace(r, static_cast<std::uint32_t>(row_monos.size()));
          if (fresh) row_monos.push_back(r);
          const auto& cs = c.coeffs();
          for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i]) out.push_back({static_cast<std::uint32_t>(n), it->second, e[0] + i, cs[i]});
          }
        }
      }
      work += out.size() * s.B;
      budget.require(work, "constraint entries");
    }
  }

  // canonical row-monomial ranks
  std::vector<std::uint32_t> rank(row_monos.size());
  {
    std::vector<std::uint32_t> order(row_monos.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return row_monos[x] < row_monos[y]; });
    for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  }
  const u64 R = std::max<u64>(1, row_monos.size());
  auto pack = [&](const Entry& en, u64 b) { return (en.n * R + rank[en.mono]) * q + reduce_exponent(en.t0 + b, q); };

  std::vector<u64> keys;
  keys.reserve(work);
  for (const auto& list : contrib)
    for (const auto& en : list)
      for (u64 b = 0; b < s.B; ++b) keys.push_back(pack(en, b));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<Exponents> by_rank(row_monos.size());
  for (std::uint32_t i = 0; i < row_monos.size(); ++i) by_rank[rank[i]] = row_monos[i];
  std::vector<RowKey> rows;
  rows.reserve(keys.size());
  for (u64 k : keys) rows.push_back({static_cast<std::size_t>(k / q / R), by_rank[(k / q) % R], k % q});

  Matrix mat(p, keys.size(), cols.size(), budget);
  for (u64 a = 0; a < s.A; ++a) {
    for (std::size_t m = 0; m < M; ++m) {
      for (const auto& en : contrib[a * M + m]) {
        for (u64 b = 0; b < s.B; ++b) {
          const auto row = std::lower_bound(keys.begin(), keys.end(), pack(en, b)) - keys.begin();
          mat.add(row, cols.index(a, b, m), en.val);
        }
      }
    }
  }
  return {std::move(cols), std::move(rows), std::move(mat)};
}

/////////////////////////////////////
// Auxiliary polynomial            //
/////////////////////////////////////

struct AuxPolynomial {
  ColumnSpace columns;
  std::vector<u64> lambda;  // aligned with columns

  // Phi as a formal polynomial in x, z and the family variables.
  FormalPoly formal(const Prime& p) const {
    FormalPoly out(p, columns.family);
    for (u64 a = 0; a < columns.A; ++a) {
      for (u64 b = 0; b < columns.B; ++b) {
        for (std::size_t m = 0; m < columns.monos.size(); ++m) {
          const u64 l = lambda[columns.index(a, b, m)];
          if (l == 0) continue;
          Exponents e = columns.monos[m];
          e[0] = static_cast<unsigned>(b);
          out.add_term(std::move(e), DensePoly::monomial(p, l, a));
        }
      }
    }
    return out;
  }
};

// Upper bound on deg Psi from the column layout.
inline u64 psi_degree_bound(const ColumnSpace& cols, const Prime& p) {
  const auto vals = family_values(p, cols.family);
  u64 best = 0;
  for (const auto& e : cols.monos) {
    u64 d = 0;
    for (std::size_t j = 0; j < vals.size(); ++j) d += e[j + 1] * *vals[j].degree();
    best = std::max(best, d);
  }
  return (cols.A - 1) + p.value() * (cols.B - 1) + best;
}

// Psi(x) = Phi(x, x^p, values).
inline DensePoly assemble_psi(const AuxPolynomial& phi, const Prime& p, const WorkBudget& budget = {}) {
  const ColumnSpace& cols = phi.columns;
  budget.require(psi_degree_bound(cols, p) + 1, "assemble_psi");
  const auto vals = family_values(p, cols.family);
  std::vector<std::vector<DensePoly>> powers(vals.size());
  auto power = [&](std::size_t j, unsigned e) -> const DensePoly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(DensePoly::constant(p, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * vals[j]);
    return cache[e];
  };
  const u64 q = p.value();
  DensePoly psi(p);
  for (std::size_t m = 0; m < cols.monos.size(); ++m) {
    std::vector<u64> c((cols.A - 1) + q * (cols.B - 1) + 1, 0);
    bool any = false;
    for (u64 a = 0; a < cols.A; ++a) {
      for (u64 b = 0; b < cols.B; ++b) {
        const u64 l = phi.lambda[cols.index(a, b, m)];
        if (l == 0) continue;
        c[a + q * b] = p.add(c[a + q * b], l);
        any = true;
      }
    }
    if (!any) continue;
    DensePoly t = DensePoly::from_canonical(p, std::move(c));
    const Exponents& e = cols.monos[m];
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (e[j + 1]) t = t * power(j, e[j + 1]);
    }
    psi += t;
  }
  return psi;
}

/////////////////////////////////////
// Certificates                    //
/////////////////////////////////////

enum class CertStatus { Valid, NonvanishingFailure, Infeasible, OrderFailure };

inline const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Valid: return "VALID";
    case CertStatus::NonvanishingFailure: return "NONVANISHING_FAILURE";
    case CertStatus::Infeasible: return "INFEASIBLE";
    case CertStatus::OrderFailure: return "ORDER_FAILURE";
  }
  return "UNKNOWN";
}

struct Certificate {
  u64 p;
  FamilyId family;
  StepanovParams params;
  std::size_t rows = 0, cols = 0, nullity = 0;
  std::optional<std::size_t> psi_degree{};
  std::vector<u64> roots{};  // roots of the target outside excluded_points
  std::optional<std::size_t> min_order{};
  u64 certified_bound = 0;
  std::size_t actual_count = 0;
  std::vector<u64> excluded_points;
  CertStatus status = CertStatus::Infeasible;
  bool trivial_bound = false;

  // kept for inspection, not serialized
  InequalityReport inequalities{};
  std::optional<AuxPolynomial> phi{};
  std::optional<DensePoly> psi{};
};

inline Certificate certify(const FamilyId& f, const Prime& p, const StepanovParams& s,
                           const WorkBudget& budget = {}) {
  require_certifiable(f);
  Certificate cert{.p = p.value(), .family = f, .params = s, .excluded_points = excluded_points(f)};
  cert.inequalities = check_inequalities(f, p.value(), s);
  if (!cert.inequalities.feasible()) return cert;

  ConstraintSystem sys = build_constraints(f, p, s, budget);
  cert.rows = sys.matrix.rows();
  cert.cols = sys.matrix.cols();
  Echelon ech(sys.matrix);
  cert.nullity = ech.nullity();
  if (cert.nullity == 0) return cert;

  cert.status = CertStatus::NonvanishingFailure;
  for (std::size_t i = 0; i < cert.nullity; ++i) {
    std::vector<u64> v = ech.basis_vector(i);
    if (!is_kernel_vector(sys.matrix, v)) throw std::logic_error("kernel vector fails M v = 0");
    AuxPolynomial phi{sys.columns, std::move(v)};
    DensePoly psi = assemble_psi(phi, p, budget);
    if (psi.is_zero()) continue;
    cert.phi = std::move(phi);
    cert.psi = std::move(psi);
    break;
  }
  if (!cert.psi) return cert;

  const DensePoly target = family_values(p, f)[target_var(f)];
  const std::vector<u64> all = roots_by_evaluation(target, budget);
  if (all.size() != count_distinct_roots(target)) throw std::logic_error("root enumeration disagrees with gcd count");
  cert.actual_count = all.size();
  for (u64 a : all) {
    if (std::find(cert.excluded_points.begin(), cert.excluded_points.end(), a) == cert.excluded_points.end())
      cert.roots.push_back(a);
  }
  for (u64 a : cert.roots) {
    const std::size_t o = vanishing_order(*cert.psi, a);
    if (!cert.min_order || o < *cert.min_order) cert.min_order = o;
  }
  cert.psi_degree = *cert.psi->degree();
  cert.certified_bound = *cert.psi_degree / s.D + cert.excluded_points.size();
  cert.trivial_bound = cert.certified_bound >= p.value();
  cert.status = (!cert.min_order || *cert.min_order >= s.D) ? CertStatus::Valid : CertStatus::OrderFailure;
  return cert;
}

/////////////////////////////////////
// Parameter search                //
/////////////////////////////////////

struct ParamCandidate {
  StepanovParams params;
  u64 estimated_bound;  // floor(degree bound / D) + |excluded|
  u64 columns;
  u64 cells;  // columns times estimated rows
};

namespace detail {

inline u64 ceil_div_strict(u128 y, u128 x) { return static_cast<u64>(y / x + 1); }  // least B with B x > y

}  // namespace detail

// Feasible parameter tuples within the work budget, best estimated bound
// first.  Ranges are a bounded box around seed_params.
inline std::vector<ParamCandidate> search_params(const FamilyId& f, u64 p, const WorkBudget& budget = {},
                                                 std::size_t keep = 8) {
  require_certifiable(f);
  const StepanovParams seed = seed_params(f, p);
  const u64 excl = excluded_points(f).size();
  const u64 dy = f.tag == FamilyTag::Bessel ? p + 1 : p - 1;  // degree of one y factor
  std::vector<ParamCandidate> best;

  auto consider = [&](StepanovParams s, u128 X, u128 Y, u64 monos, u64 row_monos, u64 ydeg) {
    if (X == 0) return;
    s.B = detail::ceil_div_strict(Y, X);
    const u128 deg = (s.A - 1) + static_cast<u128>(p) * (s.B - 1) + ydeg;
    if (deg + 1 > budget.max_coeffs) return;
    const u128 cols = static_cast<u128>(s.A) * s.B * monos;
    const u128 rows = static_cast<u128>(s.D) * row_monos * std::min<u128>(p, s.A + s.B + 2 * s.D);
    if (cols * rows > budget.max_coeffs) return;
    ParamCandidate c{s, static_cast<u64>(deg / s.D) + excl, static_cast<u64>(cols), static_cast<u64>(cols * rows)};
    auto key = [](const ParamCandidate& x) {
      return std::tuple(x.estimated_bound, x.cells, x.params.A, x.params.B, x.params.C, x.params.D,
                        x.params.E.value_or(0), x.params.n.value_or(0));
    };
    if (best.size() == keep && key(c) >= key(best.back())) return;
    if (!check_inequalities(f, p, s).feasible()) return;
    best.insert(std::upper_bound(best.begin(), best.end(), c, [&](const auto& x, const auto& y) { return key(x) < key(y); }),
                c);
    if (best.size() > keep) best.pop_back();
  };
  auto box = [](u64 v, u64 cap) { return std::min<u64>(2 * v + 8, cap); };
  const u64 dmax = std::min<u64>(p - 1, 2000);

  if (is_first_order(f)) {
    for (u64 C = 1; C <= box(seed.C, 64); ++C)
      for (u64 A = 1; A <= box(seed.A, 2000); ++A)
        for (u64 D = 1; D <= box(seed.D, dmax); ++D) {
          if (static_cast<u128>(A) * C <= D) break;
          // D(A+2D+C) + D B < A B C
          consider({A, 0, C, D, std::nullopt, std::nullopt}, static_cast<u128>(A) * C - D,
                   static_cast<u128>(D) * (A + 2 * D + C), C + 1, 1, dy * C);
        }
  } else if (f.tag == FamilyTag::PolyLog) {
    for (u64 C = 1; C < 32; ++C) {
      const u128 s0 = count_weighted_tuples(C, f.k - 1), s1 = count_weighted_tuples(C, f.k);
      const u128 pow4 = static_cast<u128>(1) << (2 * C);
      if (pow4 >= p - 1) break;
      for (u64 A = 1; A <= box(seed.A, 2000) && A * pow4 < p - 1; ++A)
        for (u64 D = 1; D <= box(seed.D, dmax); ++D) {
          if (A * s1 <= D * s0) break;
          consider({A, 0, C, D, std::nullopt, std::nullopt}, A * s1 - D * s0, D * (A + 2 * D) * s0, s1, s0, dy * C);
        }
    }
  } else if (f.tag == FamilyTag::PolyExp) {
    u128 pow6 = 6;
    for (u64 C = 1; pow6 < p - 1; ++C, pow6 *= 6) {
      const u128 s0 = count_weighted_tuples(C, f.k - 1), s1 = count_weighted_tuples(C, f.k);
      for (u64 A = 1; A <= box(seed.A, 2000); ++A)
        for (u64 E = 1; E <= box(seed.E.value_or(1), 2000); ++E) {
          if ((A + 1) * (E + A + 2) * pow6 >= p - 1) break;
          for (u64 D = 1; D <= box(seed.D, dmax); ++D) {
            const u128 lhs = static_cast<u128>(D) * (E + D) * s0, rhs = static_cast<u128>(A) * E * s1;
            if (rhs <= lhs) break;
            consider({A, 0, C, D, E, std::nullopt}, rhs - lhs, static_cast<u128>(D) * (A + D) * (E + D) * s0,
                     (E + 1) * s1, (E + C + 1) * s0, dy * (C + E));
          }
        }
    }
  } else {
    u64 n = detail::floor_root(BigInt(p) - 1, 3);  // largest n with n^3 < p
    for (u64 C = 1; 2 * C * C < n; ++C)
      for (u64 A = 1; 2 * (A + 1) * C < n; ++A)
        for (u64 D = 1; D <= box(seed.D, dmax); ++D) {
          if (static_cast<u128>(A) * (C + 2) <= 2 * D) break;
          // 2D(A+B+2D) < AB(C+2)
          consider({A, 0, C, D, std::nullopt, n}, static_cast<u128>(A) * (C + 2) - 2 * D,
                   static_cast<u128>(2) * D * (A + 2 * D), (C + 1) * (C + 2) / 2, C + 1, dy * C);
        }
  }
  return best;
}

// Seed values when they satisfy every inequality, else the best searched tuple.
inline StepanovParams default_params(const FamilyId& f, u64 p, const WorkBudget& budget = {}) {
  require_certifiable(f);
  if (is_first_order(f) || f.tag == FamilyTag::Bessel) {
    StepanovParams s = seed_params(f, p);
    if (check_inequalities(f, p, s).feasible()) return s;
  }
  auto found = search_params(f, p, budget, 1);
  if (found.empty()) throw Error(ErrorCode::Infeasible, "no feasible parameters for " + to_string(f) + " at p=" + std::to_string(p));
  return found.front().params;
}

// Certifies with searched tuples in rank order until one is VALID.
inline Certificate certify_search(const FamilyId& f, const Prime& p, const WorkBudget& budget = {},
                                  std::size_t tries = 4) {
  auto cands = search_params(f, p.value(), budget, tries);
  if (cands.empty()) {
    Certificate c{.p = p.value(), .family = f, .params = seed_params(f, p.value()), .excluded_points = excluded_points(f)};
    c.inequalities = check_inequalities(f, p.value(), c.params);
    return c;
  }
  std::optional<Certificate> first;
  for (const auto& c : cands) {
    Certificate cert = certify(f, p, c.params, budget);
    if (cert.status == CertStatus::Valid) return cert;
    if (!first) first = std::move(cert);
  }
  return std::move(*first);
}

}  // namespace steplab

#endif  // STEPLAB_STEPANOV_HPP
