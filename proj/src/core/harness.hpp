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

// End-to-end runs: general form -> standard form -> phase one -> pivot rule,
// followed by bound evaluation and an offline check of the run log. Also the
// instance x rule experiment grid with CSV output.
//
// Run log format (JSON lines). The first line is a header
//   {"kind":"run","instance":..,"rule":..,"numeric":..,"guided":..,"n":..,
//    "m":..,"initial_objective":..,"optimal_objective":..,"delta_max":..,
//    "delta_min":..}
// followed by one object per record with "kind" = "pivot" or "reroute".
// Scalars are strings ("3/4" in rational runs, "%.17g" in float runs);
// variable indices are 0-based standard-form columns.

#ifndef ANTISTALL_CORE_HARNESS_HPP_
#define ANTISTALL_CORE_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/generators.hpp"
#include "core/lp_model.hpp"
#include "core/pivot_rules.hpp"
#include "core/simplex_core.hpp"

namespace antistall {

enum class Numeric { kFloat, kRational };
const char* numeric_name(Numeric n);
std::optional<Numeric> parse_numeric(const std::string& s);

enum class GuideKind { kOptimal, kFile };

struct RunConfig {
  RuleKind rule = RuleKind::kDantzig;
  GuideKind guide = GuideKind::kOptimal;  // antistalling only
  std::string guide_path;                 // for kFile
  RuleKind presolve_rule = RuleKind::kDantzig;
  Numeric numeric = Numeric::kRational;
  long max_iterations = -1;
  std::optional<double> tolerance;  // float runs: overrides 1e-9 (1 + |b|_inf)
  double timeout_seconds = 1800.0;
  std::optional<bool> detail_log;
  // Standard-form basis to start from instead of phase one.
  std::optional<Basis> initial_basis;
  // Delta/delta and Lemma 3 checks use the oracle when the standard form has
  // at most this many columns.
  int oracle_max_n = 14;
};

// Run log in exact form, independent of the numeric mode of the run.
struct LoggedRecord {
  long iteration = 0;
  bool is_pivot = true;
  int entering = -1;
  int leaving = -1;
  CaseLabel label = CaseLabel::kClassic;
  bool degenerate = false;
  Rational step;
  Rational objective_before;
  Rational objective_after;
  bool feasible_after = true;
  std::optional<Rational> pivot_element;
  std::optional<int> q2_before;
  std::optional<int> q2_after;
  std::optional<Rational> direction_cost;
  std::optional<Rational> direction_at_leaving;
  std::optional<Rational> alpha;
  std::vector<Rational> direction;
  std::vector<int> basis_before;
};

struct LoggedRun {
  std::string instance;
  std::string rule;
  Numeric numeric = Numeric::kRational;
  bool guided = false;
  int n = 0;
  int m = 0;
  Rational initial_objective;
  std::optional<Rational> optimal_objective;  // standard-form c'x*
  std::optional<Rational> delta_max;
  std::optional<Rational> delta_min;
  std::vector<LoggedRecord> records;
};

template <class T>
LoggedRun to_logged_run(const RunLog<T>& log, const std::string& instance, Numeric numeric);

std::string write_log_jsonl(const LoggedRun& run);
// Throws std::runtime_error with the offending line number.
LoggedRun parse_log_jsonl(const std::string& text);

// Offline verification of a run log. Antistalling runs get every check;
// classic runs only monotonicity and feasibility.
std::vector<Violation> check_run(const LoggedRun& run, const BoundReport& report);

// Bound report from a log header and its records (for `check`).
BoundReport report_from_log(const LoggedRun& run);

struct RunOutcome {
  std::string instance;
  int n = 0;
  int m = 0;
  std::string rule;
  Numeric numeric = Numeric::kRational;
  bool guided = false;
  SolveStatus status = SolveStatus::kIterationLimit;
  long pivots = 0;
  long degenerate_pivots = 0;
  int max_consecutive_degenerate = 0;
  long distinct_vertices = 0;
  long finisher_pivots = 0;
  long phase_one_pivots = 0;
  std::string objective;  // original sense; empty unless Optimal
  std::optional<Rational> objective_exact;
  BoundReport bounds;
  std::vector<Violation> violations;  // runtime hooks and check_run
  std::vector<std::string> notes;
  LoggedRun log;
  double time_ms = 0;
  // Set when the run threw during an experiment; the CSV status reads "Error".
  std::optional<std::string> error;
};

// Throws ModelError for malformed models and std::runtime_error for setup
// problems (unreadable guide file, invalid initial basis).
RunOutcome run_instance(const GeneralLP& gp, const std::string& instance, const RunConfig& config);

std::string run_report_json(const RunOutcome& r);

struct InstanceSpec {
  std::string name;
  GeneralLP lp;
};

// Instances for a family over a seed range. "all" expands to a fixed
// desk-scale grid covering every family.
std::vector<InstanceSpec> family_instances(const std::string& family, std::uint64_t seed_lo, std::uint64_t seed_hi,
                                           const std::map<std::string, std::string>& params = {});
// Every *.mps file of a directory in name order; unreadable or unsupported
// files are skipped and reported in `skipped`.
std::vector<InstanceSpec> directory_instances(const std::string& dir, std::vector<std::string>* skipped);

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<RuleKind> rules;
  RunConfig base;
  unsigned workers = 0;  // 0: hardware concurrency
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;  // instance-major, rule-minor order
  std::string csv;
  std::string summary_csv;
  long violation_count = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

extern const char* const kCsvHeader;
std::string csv_row(const RunOutcome& r);
// rule,runs,optimal,mean,median,q25,q75 over pivots_total.
std::string summary_csv(const std::vector<RunOutcome>& runs, const std::vector<RuleKind>& rules);

}  // namespace antistall

#endif  // ANTISTALL_CORE_HARNESS_HPP_
