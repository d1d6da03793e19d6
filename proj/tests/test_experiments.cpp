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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "steplab/experiments.hpp"

using namespace steplab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("steplab_test_" + name)).string();
}

std::size_t occurrences(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(ShiftSpec, Parse) {
  EXPECT_EQ(ShiftSpec::parse("zero").policy, ShiftPolicy::Zero);
  EXPECT_EQ(ShiftSpec::parse("all").policy, ShiftPolicy::All);
  auto s = ShiftSpec::parse("sample:5:42");
  EXPECT_EQ(s.policy, ShiftPolicy::Sample);
  EXPECT_EQ(s.count, 5u);
  EXPECT_EQ(s.seed, 42u);
  for (const char* bad : {"", "some", "sample", "sample:5", "sample:x:1", "sample:0:1", "sample:3:-1", "sample:3:1x"})
    EXPECT_THROW(ShiftSpec::parse(bad), Error) << bad;
}

TEST(ShiftSpec, SampleIsDistinctSortedAndReproducible) {
  ShiftSpec s{ShiftPolicy::Sample, 10, 7};
  auto a = shifts_for(s, 101), b = shifts_for(s, 101);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
  // first draw by hand
  const u64 first = (7 * Lcg::kMul + Lcg::kInc) >> 33;
  EXPECT_NE(std::find(a.begin(), a.end(), first % 101), a.end());
  EXPECT_EQ(shifts_for({ShiftPolicy::Sample, 500, 1}, 7).size(), 7u);
}

TEST(RunSweep, Examples) {
  SweepConfig cfg{FamilyId::polylog(1), 5, 5, {}, 1, {}};
  auto r = run_sweep(cfg);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(*r[0].count, 2u);
  EXPECT_NEAR(*r[0].ratio, 0.684, 5e-4);
  cfg.family = FamilyId::polyexp(0);
  EXPECT_EQ(*run_sweep(cfg)[0].count, 1u);
}

TEST(RunSweep, MatchesBruteForceUpTo199) {
  for (FamilyId f : {FamilyId::polylog(1), FamilyId::polylog(3), FamilyId::polyexp(0), FamilyId::polyexp(2),
                     FamilyId::bessel(), FamilyId::hasse(), FamilyId::rseries()}) {
    SweepConfig cfg{f, 3, 199, ShiftSpec{ShiftPolicy::Sample, 3, 11}, 2, {}};
    for (const auto& rec : run_sweep(cfg)) {
      const Prime p(rec.p);
      const DensePoly g = generate(f, p) - DensePoly::constant(p, rec.shift);
      ASSERT_TRUE(rec.count.has_value());
      EXPECT_EQ(*rec.count, roots_by_evaluation(g).size()) << to_string(f) << " p=" << rec.p << " a=" << rec.shift;
      EXPECT_LE(*rec.count, rec.p);
    }
  }
}

TEST(RunSweep, AllShiftsPartitionTheField) {
  for (FamilyId f : {FamilyId::polylog(2), FamilyId::bessel(), FamilyId::rseries()}) {
    SweepConfig cfg{f, 3, 61, ShiftSpec{ShiftPolicy::All, 0, 0}, 3, {}};
    std::map<u64, u64> total;
    for (const auto& rec : run_sweep(cfg)) total[rec.p] += *rec.count;
    for (const auto& [p, n] : total) EXPECT_EQ(n, p) << to_string(f);
  }
}

TEST(RunSweep, SortedAndIndependentOfWorkers) {
  SweepConfig a{FamilyId::polyexp(1), 3, 150, ShiftSpec{ShiftPolicy::Sample, 4, 3}, 1, {}};
  SweepConfig b = a;
  b.workers = 4;
  EXPECT_EQ(records_csv(run_sweep(a)), records_csv(run_sweep(b)));
  auto r = run_sweep(b);
  EXPECT_TRUE(std::is_sorted(r.begin(), r.end(), [](const auto& x, const auto& y) {
    return std::tie(x.p, x.shift) < std::tie(y.p, y.shift);
  }));
}

TEST(RunSweep, BudgetFlagsRecords) {
  SweepConfig cfg{FamilyId::polylog(1), 3, 40, {}, 1, WorkBudget{20}};
  auto r = run_sweep(cfg);
  ASSERT_FALSE(r.empty());
  for (const auto& rec : r) EXPECT_EQ(rec.count.has_value(), rec.p + 2 <= 20);
  const std::string csv = records_csv(r);
  EXPECT_NE(csv.find("\n37,L,1,0,,"), std::string::npos);
}

TEST(WriteRecords, CsvAndJson) {
  const std::string path = tmp("records.csv");
  write_records({}, "csv", path);
  EXPECT_EQ(slurp(path), "p,family,k,shift,count,reference_bound,ratio\n");

  SweepConfig cfg{FamilyId::polylog(1), 5, 5, {}, 1, {}};
  auto r = run_sweep(cfg);
  write_records(r, "csv", path);
  EXPECT_EQ(slurp(path), "p,family,k,shift,count,reference_bound,ratio\n5,L,1,0,2,2.924018,0.683990\n");

  const std::string jpath = tmp("records.json");
  write_records(r, "json", jpath);
  auto j = nlohmann::json::parse(slurp(jpath));
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["family"], "L");
  EXPECT_EQ(j[0]["count"], 2);
  EXPECT_DOUBLE_EQ(j[0]["ratio"].get<double>(), 0.68399);
  std::set<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.insert(it.key());
  EXPECT_EQ(keys, (std::set<std::string>{"p", "family", "k", "shift", "count", "reference_bound", "ratio"}));

  EXPECT_THROW(write_records(r, "xml", path), Error);
  EXPECT_THROW(write_records(r, "csv", "/nonexistent-dir/x.csv"), Error);
}

TEST(WriteRecords, SameConfigTwiceIsByteIdentical) {
  SweepConfig cfg{FamilyId::bessel(), 3, 300, ShiftSpec{ShiftPolicy::Sample, 5, 99}, 0, {}};
  write_records(run_sweep(cfg), "csv", tmp("a.csv"));
  write_records(run_sweep(cfg), "csv", tmp("b.csv"));
  EXPECT_EQ(slurp(tmp("a.csv")), slurp(tmp("b.csv")));
}

TEST(ParseRecords, RoundTripAndErrors) {
  SweepConfig cfg{FamilyId::polyexp(2), 3, 50, ShiftSpec{ShiftPolicy::Sample, 2, 5}, 1, {}};
  const std::string csv = records_csv(run_sweep(cfg));
  std::istringstream in(csv);
  EXPECT_EQ(records_csv(parse_records_csv(in)), csv);

  std::istringstream bad("p,family,k,shift,count,reference_bound,ratio\n5,L,1,0,2,2.9,0.6\n7,L,1,zero,2,1,1\n");
  try {
    parse_records_csv(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::istringstream hdr("p,family\n");
  EXPECT_THROW(parse_records_csv(hdr), Error);
  std::istringstream fam("p,family,k,shift,count,reference_bound,ratio\n5,Q,1,0,2,2.9,0.6\n");
  EXPECT_THROW(parse_records_csv(fam), Error);
}

TEST(RenderPlot, Examples) {
  const std::string in = tmp("plot.csv"), out = tmp("plot.svg");
  write_records({}, "csv", in);
  render_plot(in, out);
  std::string svg = slurp(out);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_EQ(occurrences(svg, "<circle"), 0u);
  EXPECT_EQ(occurrences(svg, "<line"), 2u);

  write_records(run_sweep({FamilyId::polylog(1), 5, 5, {}, 1, {}}), "csv", in);
  render_plot(in, out);
  svg = slurp(out);
  EXPECT_EQ(occurrences(svg, "<circle"), 1u);
  EXPECT_NE(svg.find(">count<"), std::string::npos);
  EXPECT_NE(svg.find(">p<"), std::string::npos);
  render_plot(in, tmp("plot2.svg"));
  EXPECT_EQ(svg, slurp(tmp("plot2.svg")));

  {
    std::ofstream f(in);
    f << "p,family,k,shift,count,reference_bound,ratio\n5,L,1,0,2,2.9\n";
  }
  try {
    render_plot(in, out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}
