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

#ifndef STEPLAB_CLI_HPP
#define STEPLAB_CLI_HPP

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "steplab/curves.hpp"
#include "steplab/experiments.hpp"
#include "steplab/formal.hpp"
#include "steplab/serialize.hpp"
#include "steplab/stepanov.hpp"

namespace steplab::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailure = 1;
inline constexpr int kUsage = 2;

// Errors that mean the arguments were wrong rather than a computation failing.
inline bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime:
    case ErrorCode::InvalidOrder:
    case ErrorCode::SingularCurve:
    case ErrorCode::ParseError:
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::DegenerateCase:
      return true;
    default:
      return false;
  }
}

inline FamilyId family_from_flags(const std::string& code, const CLI::Option* kopt, unsigned k) {
  FamilyId f{parse_family_code(code), 0};
  if (f.tag == FamilyTag::PolyLog) {
    f.k = kopt->count() ? k : 1;
  } else if (f.tag == FamilyTag::PolyExp) {
    f.k = kopt->count() ? k : 0;
  } else if (kopt->count()) {
    throw Error(ErrorCode::InvalidOrder, "--k applies only to the L and E families");
  }
  f.validate();
  return f;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

inline int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                              std::ostream& err = std::cerr) {
  CLI::App app{"Truncated special functions over prime fields: generation, root counts, identities, certificates",
               "steplab"};
  app.require_subcommand(1);
  const WorkBudget budget = WorkBudget::from_env();

  std::string family, outp, inp, json_path, shifts = "zero", format = "csv";
  unsigned k = 0, workers = 0;
  u64 p = 0, shift = 0, pmin = 0, pmax = 0, lambda = 0, A = 0, B = 0, C = 0, D = 0, E = 0, n = 0;
  std::size_t nmax = 0;
  bool search = false, all = false;

  const std::string fam_help = "family code: L (polylog), E (polyexp), J0 (Bessel), H (Hasse), R";
  auto* gen = app.add_subcommand("gen", "emit a truncation as JSON {p, coeffs, family, k}");
  gen->add_option("--family", family, fam_help)->required();
  auto* gen_k = gen->add_option("--k", k, "order (L: >= 1, default 1; E: >= 0, default 0)");
  gen->add_option("--p", p, "odd prime")->required();
  gen->add_option("--out", outp, "output file (default: standard output)");

  auto* roots = app.add_subcommand("roots", "number of distinct roots in F_p of the truncation minus a shift");
  roots->add_option("--family", family, fam_help)->required();
  auto* roots_k = roots->add_option("--k", k, "order (L: >= 1, default 1; E: >= 0, default 0)");
  roots->add_option("--p", p, "odd prime")->required();
  roots->add_option("--shift", shift, "subtract this constant first (default 0)");

  auto* sweep = app.add_subcommand("sweep", "root counts over a prime range");
  sweep->add_option("--family", family, fam_help)->required();
  auto* sweep_k = sweep->add_option("--k", k, "order (L: >= 1, default 1; E: >= 0, default 0)");
  sweep->add_option("--pmin", pmin, "smallest prime considered")->required();
  sweep->add_option("--pmax", pmax, "largest prime considered")->required();
  sweep->add_option("--shifts", shifts, "zero | all | sample:N:SEED (default zero)");
  sweep->add_option("--out", outp, "output file")->required();
  sweep->add_option("--format", format, "csv | json (default csv)")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--workers", workers, "worker threads (default: hardware concurrency)");

  auto* step = app.add_subcommand("stepanov", "auxiliary-polynomial root-count certificate as JSON");
  step->add_option("--family", family, "L, E or J0")->required();
  auto* step_k = step->add_option("--k", k, "order (L: >= 1, default 1; E: >= 0, default 0)");
  step->add_option("--p", p, "odd prime")->required();
  auto* oA = step->add_option("--A", A, "x-degree bound");
  auto* oB = step->add_option("--B", B, "x^p-degree bound");
  auto* oC = step->add_option("--C", C, "weighted degree bound in the family variables");
  auto* oD = step->add_option("--D", D, "vanishing order");
  auto* oE = step->add_option("--E", E, "E_0-degree bound (E with k >= 1)");
  auto* on = step->add_option("--n", n, "J0 auxiliary parameter (default: largest n with n^3 < p)");
  step->add_flag("--search", search, "search parameter tuples in rank order until one certifies");
  step->add_option("--out", outp, "certificate file (default: standard output)");

  auto* ode = app.add_subcommand("verify-ode", "check the differential identities for orders up to K");
  ode->add_option("--family", family, "L, E or J0")->required();
  auto* ode_k = ode->add_option("--k", k, "largest order checked (L: default 1; E: default 0)");
  ode->add_option("--p", p, "odd prime")->required();
  ode->add_option("--nmax", nmax, "largest derivative order")->required()->check(CLI::PositiveNumber);
  ode->add_option("--json", json_path, "report file (default: standard output)");

  auto* hasse = app.add_subcommand("hasse", "Legendre-curve traces against the Hasse invariant, as CSV");
  hasse->add_option("--p", p, "prime >= 5")->required();
  auto* hl = hasse->add_option("--lambda", lambda, "single curve parameter");
  auto* ha = hasse->add_flag("--all", all, "every lambda except 0 and 1 (default; p <= 499)");
  hl->excludes(ha);
  hasse->add_option("--out", outp, "output file (default: standard output)");

  auto* plot = app.add_subcommand("plot", "SVG scatter of a sweep CSV");
  plot->add_option("--in", inp, "sweep CSV")->required();
  plot->add_option("--out", outp, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto used = app.get_subcommands();
    out << (used.empty() ? app.help("", CLI::AppFormatMode::All) : used.front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen) {
      const FamilyId f = family_from_flags(family, gen_k, k);
      emit(dump(generator_json(f, generate(f, Prime(p)))), outp, out);
      return kOk;
    }
    if (*roots) {
      const FamilyId f = family_from_flags(family, roots_k, k);
      const Prime pr(p);
      const DensePoly g = generate(f, pr) - DensePoly::constant(pr, shift);
      out << (g.is_zero() ? p : count_distinct_roots(g)) << "\n";
      return kOk;
    }
    if (*sweep) {
      SweepConfig cfg{family_from_flags(family, sweep_k, k), pmin, pmax, ShiftSpec::parse(shifts), workers, budget};
      write_records(run_sweep(cfg), format, outp);
      return kOk;
    }
    if (*step) {
      const FamilyId f = family_from_flags(family, step_k, k);
      require_certifiable(f);
      const Prime pr(p);
      const bool explicit_params = oA->count() || oB->count() || oC->count() || oD->count();
      Certificate cert{};
      if (explicit_params) {
        if (!(oA->count() && oB->count() && oC->count() && oD->count()))
          throw Error(ErrorCode::ParseError, "--A, --B, --C and --D go together");
        StepanovParams s{A, B, C, D, std::nullopt, std::nullopt};
        if (oE->count()) s.E = E;
        if (f.tag == FamilyTag::Bessel) s.n = on->count() ? n : detail::floor_root(BigInt(p) - 1, 3);
        cert = certify(f, pr, s, budget);
      } else if (search) {
        cert = certify_search(f, pr, budget);
      } else {
        cert = certify(f, pr, default_params(f, p, budget), budget);
      }
      for (const auto& c : cert.inequalities.checks)
        err << (c.holds ? "ok   " : "FAIL ") << c.name << ": " << c.lhs << " vs " << c.rhs << "\n";
      err << to_string(f) << " p=" << p << " " << to_string(cert.params) << ": " << to_string(cert.status)
          << ", bound " << cert.certified_bound << ", actual " << cert.actual_count << "\n";
      emit(dump(to_json(cert)), outp, out);
      return cert.status == CertStatus::Valid ? kOk : kVerificationFailure;
    }
    if (*ode) {
      const FamilyId top = family_from_flags(family, ode_k, k);
      require_formal_family(top);
      const Prime pr(p);
      Json orders = Json::array();
      bool pass = true;
      const unsigned lo = top.tag == FamilyTag::PolyLog ? 1 : 0;
      for (unsigned kk = top.tag == FamilyTag::Bessel ? 0 : lo; kk <= top.k; ++kk) {
        const FamilyId f{top.tag, kk};
        const OdeReport r = verify_ode_identity(f, pr, nmax);
        Json j = to_json(r);
        if (f.tag != FamilyTag::Bessel && kk >= 2) j["recurrence"] = to_json(lemma_coeffs(f, pr, nmax))["steps"];
        orders.push_back(j);
        pass = pass && r.pass();
        for (const auto& s : r.steps)
          err << (s.pass() ? "PASS " : "FAIL ") << to_string(f) << " n=" << s.n << "\n";
        if (r.bessel) err << (r.bessel->pass() ? "PASS " : "FAIL ") << "J0 closed-form identities\n";
      }
      Json rep{{"family", family_code(top.tag)}, {"k", top.k}, {"p", p}, {"nmax", nmax}, {"orders", orders}, {"pass", pass}};
      emit(dump(rep), json_path, out);
      return pass ? kOk : kVerificationFailure;
    }
    if (*hasse) {
      const Prime pr(p);
      std::vector<HasseCheck> rows;
      if (hl->count()) {
        rows.push_back(verify_hasse_congruence(pr, lambda));
      } else {
        rows = hasse_sweep(pr);
      }
      emit(hasse_csv(rows), outp, out);
      for (const auto& r : rows)
        if (!r.pass()) return kVerificationFailure;
      return kOk;
    }
    if (*plot) {
      render_plot(inp, outp);
      return kOk;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_usage_error(e.code()) ? kUsage : kVerificationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kUsage;
}

}  // namespace steplab::cli

#endif  // STEPLAB_CLI_HPP
