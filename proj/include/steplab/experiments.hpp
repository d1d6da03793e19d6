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

#ifndef STEPLAB_EXPERIMENTS_HPP
#define STEPLAB_EXPERIMENTS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "steplab/truncations.hpp"

namespace steplab {

enum class ShiftPolicy { Zero, All, Sample };

struct ShiftSpec {
  ShiftPolicy policy = ShiftPolicy::Zero;
  u64 count = 0;  // Sample only
  u64 seed = 0;   // Sample only

  // "zero", "all" or "sample:N:SEED"
  static ShiftSpec parse(const std::string& s) {
    if (s == "zero") return {};
    if (s == "all") return {ShiftPolicy::All, 0, 0};
    auto bad = [&] { return Error(ErrorCode::ParseError, "shift policy '" + s + "'; expected zero, all or sample:N:SEED"); };
    if (s.rfind("sample:", 0) != 0) throw bad();
    const auto colon = s.find(':', 7);
    if (colon == std::string::npos) throw bad();
    try {
      std::size_t used = 0;
      const std::string n = s.substr(7, colon - 7), seed = s.substr(colon + 1);
      const u64 cnt = std::stoull(n, &used);
      if (used != n.size() || cnt == 0 || n[0] == '-') throw bad();
      const u64 sd = std::stoull(seed, &used);
      if (used != seed.size() || seed[0] == '-') throw bad();
      return {ShiftPolicy::Sample, cnt, sd};
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
};

// 64-bit linear congruential generator; shifts are (state >> 33) mod p.
struct Lcg {
  static constexpr u64 kMul = 6364136223846793005ULL;
  static constexpr u64 kInc = 1442695040888963407ULL;
  u64 state;
  u64 next() {
    state = state * kMul + kInc;
    return state >> 33;
  }
};

// Sorted distinct shifts for one prime.
inline std::vector<u64> shifts_for(const ShiftSpec& s, u64 p) {
  std::vector<u64> out;
  switch (s.policy) {
    case ShiftPolicy::Zero:
      out.push_back(0);
      break;
    case ShiftPolicy::All:
      for (u64 a = 0; a < p; ++a) out.push_back(a);
      break;
    case ShiftPolicy::Sample: {
      if (s.count >= p) return shifts_for({ShiftPolicy::All, 0, 0}, p);
      std::set<u64> seen;
      Lcg g{s.seed};
      while (seen.size() < s.count) seen.insert(g.next() % p);
      out.assign(seen.begin(), seen.end());
    }
  }
  return out;
}

struct SweepConfig {
  FamilyId family;
  u64 pmin = 3, pmax = 3;
  ShiftSpec shifts;
  unsigned workers = 0;  // 0: hardware concurrency
  WorkBudget budget;
};

struct SweepRecord {
  u64 p;
  FamilyId family;
  u64 shift;
  std::optional<u64> count;  // empty when the record exceeded the budget
  double reference_bound;
  std::optional<double> ratio;
};

inline double reference_bound(const FamilyId& f, u64 p) {
  const double x = static_cast<double>(p), l = std::log(x);
  switch (f.tag) {
    case FamilyTag::PolyLog:
      return f.k == 1 ? std::cbrt(x * x) : x / l;
    case FamilyTag::PolyExp:
      return f.k == 0 ? std::cbrt(x * x) : x / std::sqrt(l);
    case FamilyTag::Bessel:
      return std::pow(x, 8.0 / 9.0);
    case FamilyTag::RSeries:
      return std::cbrt(x * x);
    case FamilyTag::Hasse: {
      const double ll = std::log(l);
      return std::sqrt(x) * l * ll * ll;
    }
  }
  return 0;
}

// Primes where the family is defined (R needs p >= 5).
inline std::vector<u64> sweep_primes(const SweepConfig& cfg) {
  std::vector<u64> out;
  const u64 lo = std::max<u64>(cfg.pmin, cfg.family.tag == FamilyTag::RSeries ? 5 : 3);
  for (u64 q = lo; q <= cfg.pmax; ++q)
    if (is_prime(q)) out.push_back(q);
  return out;
}

inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.family.validate();
  struct Task {
    std::size_t prime_index;
    u64 shift;
  };
  const std::vector<u64> primes = sweep_primes(cfg);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (u64 a : shifts_for(cfg.shifts, primes[i])) tasks.push_back({i, a});

  // generators are built lazily, once per prime
  std::vector<std::optional<DensePoly>> gens(primes.size());
  std::vector<std::once_flag> once(primes.size());
  std::vector<SweepRecord> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      const u64 q = primes[tasks[t].prime_index];
      const Prime p(q);
      SweepRecord r{q, cfg.family, tasks[t].shift, std::nullopt, reference_bound(cfg.family, q), std::nullopt};
      try {
        cfg.budget.require(q + 2, "root count");
        auto& g = gens[tasks[t].prime_index];
        std::call_once(once[tasks[t].prime_index], [&] { g = generate(cfg.family, p); });
        const DensePoly f = *g - DensePoly::constant(p, tasks[t].shift);
        r.count = f.is_zero() ? q : count_distinct_roots(f);
        r.ratio = static_cast<double>(*r.count) / r.reference_bound;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
      }
      out[t] = r;
    }
  };
  unsigned n = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, tasks.size())));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return std::tie(x.p, x.shift) < std::tie(y.p, y.shift); });
  return out;
}

/////////////////////////////////////
// Persistence                     //
/////////////////////////////////////

inline constexpr const char* kSweepHeader = "p,family,k,shift,count,reference_bound,ratio";

inline std::string format6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string records_csv(const std::vector<SweepRecord>& rs) {
  std::string s = std::string(kSweepHeader) + "\n";
  for (const auto& r : rs) {
    s += std::to_string(r.p) + "," + family_code(r.family.tag) + "," + std::to_string(r.family.k) + "," +
         std::to_string(r.shift) + "," + (r.count ? std::to_string(*r.count) : "") + "," + format6(r.reference_bound) +
         "," + (r.ratio ? format6(*r.ratio) : "") + "\n";
  }
  return s;
}

inline std::string records_json(const std::vector<SweepRecord>& rs) {
  // floats go through the same 6-digit rounding as the CSV
  auto num = [](double v) { return nlohmann::json::parse(format6(v)); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rs) {
    arr.push_back({{"p", r.p},
                   {"family", family_code(r.family.tag)},
                   {"k", r.family.k},
                   {"shift", r.shift},
                   {"count", r.count ? nlohmann::json(*r.count) : nlohmann::json(nullptr)},
                   {"reference_bound", num(r.reference_bound)},
                   {"ratio", r.ratio ? num(*r.ratio) : nlohmann::json(nullptr)}});
  }
  return arr.dump(2) + "\n";
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

inline void write_records(const std::vector<SweepRecord>& rs, const std::string& format, const std::string& path) {
  if (format == "csv") {
    write_text(path, records_csv(rs));
  } else if (format == "json") {
    write_text(path, records_json(rs));
  } else {
    throw Error(ErrorCode::ParseError, "unknown record format '" + format + "'");
  }
}

// Parses the sweep CSV produced by records_csv.
inline std::vector<SweepRecord> parse_records_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + why);
  };
  if (!std::getline(in, line)) throw fail("missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepHeader) throw fail("expected header '" + std::string(kSweepHeader) + "'");
  std::vector<SweepRecord> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 7) throw fail("expected 7 fields, found " + std::to_string(f.size()));
    auto u = [&](const std::string& s, const char* what) -> u64 {
      std::size_t used = 0;
      try {
        const u64 v = std::stoull(s, &used);
        if (used == s.size() && !s.empty() && s[0] != '-') return v;
      } catch (const std::logic_error&) {
      }
      throw fail(std::string("bad ") + what + " '" + s + "'");
    };
    auto d = [&](const std::string& s, const char* what) -> double {
      std::size_t used = 0;
      try {
        const double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v) && v >= 0) return v;
      } catch (const std::logic_error&) {
      }
      throw fail(std::string("bad ") + what + " '" + s + "'");
    };
    SweepRecord r{};
    r.p = u(f[0], "p");
    try {
      r.family = FamilyId{parse_family_code(f[1]), static_cast<unsigned>(u(f[2], "k"))};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      throw fail("bad family '" + f[1] + "'");
    }
    r.shift = u(f[3], "shift");
    if (!f[4].empty()) r.count = u(f[4], "count");
    r.reference_bound = d(f[5], "reference_bound");
    if (!f[6].empty()) r.ratio = d(f[6], "ratio");
    out.push_back(r);
  }
  return out;
}

/////////////////////////////////////
// Plot                            //
/////////////////////////////////////

// Standalone SVG: count against p, one reference curve per family.
inline std::string render_svg(const std::vector<SweepRecord>& rs) {
  const double W = 800, H = 500, L = 70, R = 20, T = 30, Bm = 60;
  double pmin = 0, pmax = 1, ymax = 1;
  if (!rs.empty()) {
    pmin = pmax = static_cast<double>(rs.front().p);
    for (const auto& r : rs) {
      pmin = std::min(pmin, static_cast<double>(r.p));
      pmax = std::max(pmax, static_cast<double>(r.p));
      ymax = std::max(ymax, r.reference_bound);
      if (r.count) ymax = std::max(ymax, static_cast<double>(*r.count));
    }
    if (pmax == pmin) pmax = pmin + 1;
  }
  ymax *= 1.05;
  auto X = [&](double p) { return L + (p - pmin) / (pmax - pmin) * (W - L - R); };
  auto Y = [&](double y) { return H - Bm - y / ymax * (H - T - Bm); };
  auto f2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  s += "<line x1=\"" + f2(L) + "\" y1=\"" + f2(H - Bm) + "\" x2=\"" + f2(W - R) + "\" y2=\"" + f2(H - Bm) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + f2(L) + "\" y1=\"" + f2(T) + "\" x2=\"" + f2(L) + "\" y2=\"" + f2(H - Bm) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double pv = pmin + (pmax - pmin) * i / 4, yv = ymax * i / 4;
    s += "<text x=\"" + f2(X(pv)) + "\" y=\"" + f2(H - Bm + 18) + "\" font-size=\"11\" text-anchor=\"middle\">" + f2(pv) + "</text>\n";
    s += "<text x=\"" + f2(L - 6) + "\" y=\"" + f2(Y(yv) + 4) + "\" font-size=\"11\" text-anchor=\"end\">" + f2(yv) + "</text>\n";
  }
  s += "<text x=\"" + f2((L + W - R) / 2) + "\" y=\"" + f2(H - 15) + "\" font-size=\"13\" text-anchor=\"middle\">p</text>\n";
  s += "<text x=\"18\" y=\"" + f2((T + H - Bm) / 2) + "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       f2((T + H - Bm) / 2) + ")\">count</text>\n";

  std::map<std::pair<std::string, unsigned>, std::map<u64, double>> curves;
  for (const auto& r : rs) curves[{family_code(r.family.tag), r.family.k}][r.p] = r.reference_bound;
  for (const auto& [fam, pts] : curves) {
    s += "<polyline fill=\"none\" stroke=\"red\" data-family=\"" + fam.first + "\" data-k=\"" + std::to_string(fam.second) + "\" points=\"";
    bool first = true;
    for (const auto& [p, y] : pts) {
      s += (first ? "" : " ") + f2(X(static_cast<double>(p))) + "," + f2(Y(y));
      first = false;
    }
    s += "\"/>\n";
  }
  for (const auto& r : rs) {
    if (!r.count) continue;
    s += "<circle cx=\"" + f2(X(static_cast<double>(r.p))) + "\" cy=\"" + f2(Y(static_cast<double>(*r.count))) +
         "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void render_plot(const std::string& csv_path, const std::string& out_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + csv_path);
  write_text(out_path, render_svg(parse_records_csv(in)));
}

}  // namespace steplab

#endif  // STEPLAB_EXPERIMENTS_HPP
