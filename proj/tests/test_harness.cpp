// Copyright 2026 The Antistall Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "core/harness.hpp"
#include "core/mps.hpp"
#include "test_util.hpp"

namespace antistall {
namespace {

using testing::Q;

RunConfig antistalling_config(Numeric numeric = Numeric::kRational) {
  RunConfig c;
  c.rule = RuleKind::kAntistalling;
  c.numeric = numeric;
  return c;
}

bool has_claim(const std::vector<Violation>& v, const std::string& claim) {
  for (const auto& x : v)
    if (x.claim == claim) return true;
  return false;
}

TEST(RunInstance, LpCIsCleanAndReroutes) {
  const RunOutcome r = run_instance(gen_named("lp_c").lp, "lp_c", antistalling_config());
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, "-20");
  EXPECT_TRUE(r.violations.empty()) << r.violations[0].claim;
  bool reroute = false;
  for (const auto& rec : r.log.records) reroute = reroute || !rec.is_pivot;
  EXPECT_TRUE(reroute);
  EXPECT_TRUE(r.bounds.all_pass());
}

TEST(RunInstance, LpBFloatAndRationalAgree) {
  const RunOutcome a = run_instance(gen_named("lp_b").lp, "lp_b", antistalling_config(Numeric::kRational));
  const RunOutcome b = run_instance(gen_named("lp_b").lp, "lp_b", antistalling_config(Numeric::kFloat));
  EXPECT_EQ(a.status, SolveStatus::kOptimal);
  EXPECT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_EQ(a.pivots, b.pivots);
  EXPECT_DOUBLE_EQ(std::stod(b.objective), -2.0);
  EXPECT_EQ(a.objective, "-2");
}

// m Delta / delta = 1 makes the vertex-transition cap zero, but one pivot is
// needed; the run is reported, not hidden.
TEST(RunInstance, LpAExceedsLiteralVertexCap) {
  const RunOutcome r = run_instance(gen_named("lp_a").lp, "lp_a", antistalling_config());
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.pivots, 1);
  ASSERT_TRUE(r.bounds.theorem2_total.has_value());
  EXPECT_EQ(*r.bounds.theorem2_total, 0);
  EXPECT_TRUE(has_claim(r.violations, "lemma1_vertices"));
}

TEST(RunInstance, InfeasibleAndUnbounded) {
  GeneralLP inf;
  inf.add_column("x", Q(1));
  inf.add_row("a", {1}, Relation::kLessEqual, Q(1));
  inf.add_row("b", {1}, Relation::kGreaterEqual, Q(2));
  EXPECT_EQ(run_instance(inf, "inf", antistalling_config()).status, SolveStatus::kInfeasible);

  GeneralLP unb;
  unb.add_column("x", Q(-1));
  unb.add_column("y", Q(0));
  unb.add_row("a", {1, -1}, Relation::kLessEqual, Q(1));
  RunConfig c;
  c.rule = RuleKind::kBland;
  EXPECT_EQ(run_instance(unb, "unb", c).status, SolveStatus::kUnbounded);
  EXPECT_EQ(run_instance(unb, "unb", antistalling_config()).status, SolveStatus::kUnbounded);
}

TEST(RunInstance, FileGuide) {
  const auto path = std::filesystem::temp_directory_path() / "astall_guide_lpb.json";
  {
    std::ofstream out(path);
    out << R"({"target":["0","2","1","0","3"]})";
  }
  RunConfig c = antistalling_config();
  c.guide = GuideKind::kFile;
  c.guide_path = path.string();
  const RunOutcome r = run_instance(gen_named("lp_b").lp, "lp_b", c);
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, "-2");
  EXPECT_TRUE(r.violations.empty());
  c.guide_path = "/nonexistent/guide.json";
  EXPECT_THROW(run_instance(gen_named("lp_b").lp, "lp_b", c), std::runtime_error);
  std::filesystem::remove(path);
}

TEST(RunLog, JsonlRoundTrip) {
  for (Numeric num : {Numeric::kRational, Numeric::kFloat}) {
    const RunOutcome r = run_instance(gen_named("lp_c").lp, "lp_c", antistalling_config(num));
    const std::string text = write_log_jsonl(r.log);
    const LoggedRun back = parse_log_jsonl(text);
    EXPECT_EQ(write_log_jsonl(back), text);
    EXPECT_EQ(back.records.size(), r.log.records.size());
    EXPECT_TRUE(check_run(back, report_from_log(back)).empty());
    const BoundReport rep = report_from_log(back);
    EXPECT_EQ(rep.observed_max_consecutive_degenerate, r.bounds.observed_max_consecutive_degenerate);
  }
}

TEST(RunLog, ParseErrorsNameTheLine) {
  const RunOutcome r = run_instance(gen_named("lp_b").lp, "lp_b", antistalling_config());
  std::string text = write_log_jsonl(r.log);
  const std::size_t nl = text.find('\n');
  text.insert(nl + 1, "{not json\n");
  try {
    parse_log_jsonl(text);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_log_jsonl(""), std::runtime_error);
}

// A synthetic antistalling log with n - m consecutive degenerate pivots.
LoggedRun stalled_log(const std::string& rule, CaseLabel label) {
  LoggedRun run;
  run.instance = "synthetic";
  run.rule = rule;
  run.guided = false;
  run.n = 6;
  run.m = 3;
  run.initial_objective = 0;
  for (int k = 0; k < 3; ++k) {
    LoggedRecord rec;
    rec.iteration = k;
    rec.entering = k;
    rec.leaving = 3 + k;
    rec.label = label;
    rec.degenerate = true;
    rec.step = 0;
    rec.objective_before = 0;
    rec.objective_after = 0;
    if (label != CaseLabel::kClassic) {
      rec.q2_before = 3 - k;
      rec.q2_after = 2 - k;
    }
    run.records.push_back(rec);
  }
  return run;
}

TEST(CheckRun, TamperedStreakViolatesTheorem1) {
  const LoggedRun run = stalled_log("antistalling", CaseLabel::kCaseII);
  const auto v = check_run(run, report_from_log(run));
  EXPECT_TRUE(has_claim(v, "theorem1"));
}

TEST(CheckRun, ClassicRunsOnlyGetGenericChecks) {
  LoggedRun run = stalled_log("dantzig", CaseLabel::kClassic);
  EXPECT_TRUE(check_run(run, report_from_log(run)).empty());
  run.records[1].objective_after = 1;
  const auto v = check_run(run, report_from_log(run));
  ASSERT_FALSE(v.empty());
  for (const auto& x : v) EXPECT_EQ(x.claim, "monotonicity");
  run.records[2].feasible_after = false;
  EXPECT_TRUE(has_claim(check_run(run, report_from_log(run)), "feasibility"));
}

TEST(CheckRun, DetectsBrokenRerouteCoupling) {
  const RunOutcome r = run_instance(gen_named("lp_c").lp, "lp_c", antistalling_config());
  LoggedRun log = r.log;
  for (std::size_t k = 0; k + 1 < log.records.size(); ++k) {
    if (!log.records[k].is_pivot) {
      log.records.erase(log.records.begin() + static_cast<long>(k) + 1);
      break;
    }
  }
  EXPECT_TRUE(has_claim(check_run(log, report_from_log(log)), "case3_coupling"));
}

std::string strip_time(const std::string& csv) {
  std::string out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find('\n', pos);
    if (end == std::string::npos) end = csv.size();
    const std::string line = csv.substr(pos, end - pos);
    out += line.substr(0, line.rfind(',')) + "\n";
    pos = end + 1;
  }
  return out;
}

TEST(Experiment, CsvIsDeterministicAcrossWorkerCounts) {
  ExperimentConfig c;
  c.instances = family_instances("degenerate_pyramid", 1, 3, {{"d", "3"}});
  auto named = family_instances("named", 1, 1, {{"name", "lp_c"}});
  c.instances.insert(c.instances.end(), named.begin(), named.end());
  c.rules = all_rules();
  c.workers = 1;
  const ExperimentResult a = run_experiment(c);
  c.workers = 3;
  const ExperimentResult b = run_experiment(c);
  EXPECT_EQ(strip_time(a.csv), strip_time(b.csv));
  EXPECT_EQ(a.summary_csv, b.summary_csv);
  EXPECT_EQ(a.runs.size(), 4 * all_rules().size());
  EXPECT_EQ(a.csv.substr(0, a.csv.find('\n')), kCsvHeader);
  EXPECT_EQ(a.violation_count, 0);
}

TEST(Experiment, SummaryQuantilesAreType7) {
  std::vector<RunOutcome> runs(4);
  for (int k = 0; k < 4; ++k) {
    runs[k].rule = "bland";
    runs[k].pivots = k + 1;
    runs[k].status = k == 3 ? SolveStatus::kIterationLimit : SolveStatus::kOptimal;
  }
  EXPECT_EQ(summary_csv(runs, {RuleKind::kBland, RuleKind::kDantzig}),
            "rule,runs,optimal,mean,median,q25,q75\n"
            "bland,4,3,2.5000,2.5000,1.7500,3.2500\n"
            "dantzig,0,0,0.0000,0.0000,0.0000,0.0000\n");
}

TEST(Experiment, CsvRowQuotesAndMarksErrors) {
  RunOutcome r;
  r.instance = "a,b";
  r.rule = "bland";
  r.n = 4;
  r.m = 2;
  r.error = "boom";
  const std::string row = csv_row(r);
  EXPECT_EQ(row.rfind("\"a,b\",4,2,bland,Error,", 0), 0u) << row;
}

TEST(Experiment, ErrorsDoNotStopTheGrid) {
  ExperimentConfig c;
  GeneralLP free_var;
  free_var.add_column("f", Q(1), std::nullopt, std::nullopt);
  free_var.add_row("r", {1}, Relation::kLessEqual, Q(1));
  c.instances = {{"bad", free_var}, {"lp_b", gen_named("lp_b").lp}};
  c.rules = {RuleKind::kBland};
  c.workers = 1;
  const ExperimentResult res = run_experiment(c);
  ASSERT_EQ(res.runs.size(), 2u);
  EXPECT_TRUE(res.runs[0].error.has_value());
  EXPECT_FALSE(res.runs[1].error.has_value());
  EXPECT_EQ(res.runs[1].status, SolveStatus::kOptimal);
}

TEST(Experiment, DirectoryInstancesSkipBadFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "astall_dir_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "b.mps") << write_mps(gen_named("lp_b").lp);
    std::ofstream(dir / "a.mps") << write_mps(gen_named("lp_c").lp);
    std::ofstream(dir / "c.mps") << "NAME broken\nROWS\n";
    std::ofstream(dir / "notes.txt") << "ignored";
  }
  std::vector<std::string> skipped;
  const auto inst = directory_instances(dir.string(), &skipped);
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst[0].name, "a");
  EXPECT_EQ(inst[1].name, "b");
  EXPECT_EQ(skipped.size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(Experiment, AllFamiliesGridIsNonEmpty) {
  const auto inst = family_instances("all", 1, 1);
  EXPECT_GE(inst.size(), 8u);
  EXPECT_THROW(family_instances("nope", 1, 1), GeneratorError);
}

}  // namespace
}  // namespace antistall
