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

#ifndef STEPLAB_SERIALIZE_HPP
#define STEPLAB_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "steplab/curves.hpp"
#include "steplab/formal.hpp"
#include "steplab/stepanov.hpp"

namespace steplab {

using Json = nlohmann::json;

inline Json to_json(const DensePoly& f) { return Json{{"p", f.modulus().value()}, {"coeffs", f.vec()}}; }

inline DensePoly poly_from_json(const Json& j) {
  try {
    const u64 p = j.at("p").get<u64>();
    const auto c = j.at("coeffs").get<std::vector<u64>>();
    for (u64 x : c)
      if (x >= p) throw Error(ErrorCode::ParseError, "coefficient not in canonical form");
    if (!c.empty() && c.back() == 0) throw Error(ErrorCode::ParseError, "trailing zero coefficient");
    return DensePoly::from_canonical(Prime(p), c);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

// Generator output: the polynomial plus its family.
inline Json generator_json(const FamilyId& f, const DensePoly& g) {
  Json j = to_json(g);
  j["family"] = family_code(f.tag);
  j["k"] = f.k;
  return j;
}

inline Json to_json(const OdeStep& s) {
  return Json{{"k", s.k},
              {"n", s.n},
              {"exact", s.exact},
              {"deg_a", s.deg_a},
              {"deg_b", s.deg_b},
              {"deg_c", s.deg_c},
              {"bound_a", s.bound_a},
              {"bound_b", s.bound_b},
              {"bound_c", s.bound_c},
              {"a_bound_asserted", s.a_bound_asserted},
              {"bounds_ok", s.bounds_ok},
              {"pass", s.pass()}};
}

inline Json to_json(const BesselChecks& b) {
  return Json{{"constant", b.constant},
              {"full_identity", b.full_identity},
              {"mod_xp_identity", b.mod_xp_identity},
              {"u_rule", b.u_rule},
              {"v_rule", b.v_rule},
              {"pass", b.pass()}};
}

inline Json to_json(const OdeReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  Json j{{"family", family_code(r.family.tag)}, {"k", r.family.k}, {"p", r.p}, {"nmax", r.nmax}, {"steps", steps},
         {"pass", r.pass()}};
  if (r.bessel) j["bessel"] = to_json(*r.bessel);
  return j;
}

inline Json to_json(const RecurrenceReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"n", s.n},
                     {"agrees", s.agrees},
                     {"printed_reproduces", s.printed_reproduces},
                     {"engine_reproduces", s.engine_reproduces},
                     {"divergences", s.divergences}});
  }
  return Json{{"family", family_code(r.family.tag)}, {"k", r.family.k}, {"p", r.p}, {"steps", steps}};
}

inline Json to_json(const StepanovParams& s) {
  Json j{{"A", s.A}, {"B", s.B}, {"C", s.C}, {"D", s.D}};
  if (s.E) j["E"] = *s.E;
  if (s.n) j["n"] = *s.n;
  return j;
}

inline Json to_json(const Certificate& c) {
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"p", c.p},
              {"family", family_code(c.family.tag)},
              {"k", c.family.k},
              {"params", to_json(c.params)},
              {"rows", c.rows},
              {"cols", c.cols},
              {"nullity", c.nullity},
              {"psi_degree", opt(c.psi_degree)},
              {"roots", c.roots},
              {"min_order", opt(c.min_order)},
              {"certified_bound", c.certified_bound},
              {"actual_count", c.actual_count},
              {"excluded_points", c.excluded_points},
              {"status", to_string(c.status)},
              {"trivial_bound", c.trivial_bound}};
}

inline Json to_json(const InequalityReport& r) {
  Json out = Json::array();
  for (const auto& c : r.checks)
    out.push_back({{"name", c.name}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"holds", c.holds}});
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline constexpr const char* kHasseHeader = "p,lambda,affine,trace,hasse_value,congruence_ok";

inline std::string hasse_csv(const std::vector<HasseCheck>& rows) {
  std::string s = std::string(kHasseHeader) + "\n";
  for (const auto& r : rows) {
    s += std::to_string(r.curve.p) + "," + std::to_string(r.curve.lambda) + "," + std::to_string(r.curve.affine) + "," +
         std::to_string(r.curve.trace) + "," + std::to_string(r.hasse_value) + "," + (r.pass() ? "true" : "false") + "\n";
  }
  return s;
}

}  // namespace steplab

#endif  // STEPLAB_SERIALIZE_HPP
