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

#include "core/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "core/mps.hpp"
#include "core/oracle.hpp"
#include "json.hpp"

namespace antistall {

using nlohmann::json;

const char* numeric_name(Numeric n) { return n == Numeric::kFloat ? "float" : "rational"; }

std::optional<Numeric> parse_numeric(const std::string& s) {
  if (s == "float") return Numeric::kFloat;
  if (s == "rational") return Numeric::kRational;
  return std::nullopt;
}

namespace {

Rational exact(double v) { return Rational(v); }
Rational exact(const Rational& v) { return v; }

template <class T>
std::optional<Rational> exact_opt(const std::optional<T>& v) {
  if (!v) return std::nullopt;
  return exact(*v);
}

std::string scalar_text(const Rational& v, Numeric numeric) {
  return numeric == Numeric::kFloat ? to_string(v.get_d()) : to_string(v);
}

}  // namespace

template <class T>
LoggedRun to_logged_run(const RunLog<T>& log, const std::string& instance, Numeric numeric) {
  LoggedRun run;
  run.instance = instance;
  run.rule = log.rule;
  run.numeric = numeric;
  run.guided = log.guided;
  run.n = log.n;
  run.m = log.m;
  run.initial_objective = exact(log.initial_objective);
  for (const PivotRecord<T>& r : log.records) {
    LoggedRecord o;
    o.iteration = r.iteration;
    o.is_pivot = r.is_pivot;
    o.entering = r.entering;
    o.leaving = r.leaving;
    o.label = r.label;
    o.degenerate = r.degenerate;
    o.step = exact(r.step);
    o.objective_before = exact(r.objective_before);
    o.objective_after = exact(r.objective_after);
    o.feasible_after = r.feasible_after;
    o.pivot_element = exact_opt(r.pivot_element);
    o.q2_before = r.q2_before;
    o.q2_after = r.q2_after;
    o.direction_cost = exact_opt(r.direction_cost);
    o.direction_at_leaving = exact_opt(r.direction_at_leaving);
    o.alpha = exact_opt(r.alpha);
    for (const T& v : r.direction) o.direction.push_back(exact(v));
    o.basis_before = r.basis_before;
    run.records.push_back(std::move(o));
  }
  return run;
}

template LoggedRun to_logged_run(const RunLog<double>&, const std::string&, Numeric);
template LoggedRun to_logged_run(const RunLog<Rational>&, const std::string&, Numeric);

std::string write_log_jsonl(const LoggedRun& run) {
  const Numeric nm = run.numeric;
  auto opt = [&](const std::optional<Rational>& v) -> json { return v ? json(scalar_text(*v, nm)) : json(nullptr); };
  std::string out;
  json head = {{"kind", "run"},
               {"instance", run.instance},
               {"rule", run.rule},
               {"numeric", numeric_name(nm)},
               {"guided", run.guided},
               {"n", run.n},
               {"m", run.m},
               {"initial_objective", scalar_text(run.initial_objective, nm)},
               {"optimal_objective", opt(run.optimal_objective)},
               {"delta_max", opt(run.delta_max)},
               {"delta_min", opt(run.delta_min)}};
  out += head.dump() + "\n";
  for (const LoggedRecord& r : run.records) {
    json j = {{"kind", r.is_pivot ? "pivot" : "reroute"},
              {"iteration", r.iteration},
              {"entering", r.entering},
              {"leaving", r.leaving},
              {"label", case_label_name(r.label)},
              {"degenerate", r.degenerate},
              {"step", scalar_text(r.step, nm)},
              {"objective_before", scalar_text(r.objective_before, nm)},
              {"objective_after", scalar_text(r.objective_after, nm)},
              {"feasible_after", r.feasible_after}};
    if (r.pivot_element) j["pivot_element"] = scalar_text(*r.pivot_element, nm);
    if (r.q2_before) j["q2_before"] = *r.q2_before;
    if (r.q2_after) j["q2_after"] = *r.q2_after;
    if (r.direction_cost) j["direction_cost"] = scalar_text(*r.direction_cost, nm);
    if (r.direction_at_leaving) j["direction_at_leaving"] = scalar_text(*r.direction_at_leaving, nm);
    if (r.alpha) j["alpha"] = scalar_text(*r.alpha, nm);
    if (!r.direction.empty()) {
      json d = json::array();
      for (const Rational& v : r.direction) d.push_back(scalar_text(v, nm));
      j["direction"] = std::move(d);
    }
    if (!r.basis_before.empty()) j["basis_before"] = r.basis_before;
    out += j.dump() + "\n";
  }
  return out;
}

namespace {

Rational json_scalar(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw std::runtime_error("expected a scalar");
}

std::optional<Rational> json_opt_scalar(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return json_scalar(j[key]);
}

}  // namespace

LoggedRun parse_log_jsonl(const std::string& text) {
  LoggedRun run;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    try {
      const json j = json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "run") {
        if (have_header) throw std::runtime_error("second header line");
        have_header = true;
        run.instance = j.value("instance", "");
        run.rule = j.at("rule").get<std::string>();
        const auto nm = parse_numeric(j.value("numeric", "rational"));
        if (!nm) throw std::runtime_error("unknown numeric mode");
        run.numeric = *nm;
        run.guided = j.value("guided", false);
        run.n = j.at("n").get<int>();
        run.m = j.at("m").get<int>();
        run.initial_objective = json_scalar(j.at("initial_objective"));
        run.optimal_objective = json_opt_scalar(j, "optimal_objective");
        run.delta_max = json_opt_scalar(j, "delta_max");
        run.delta_min = json_opt_scalar(j, "delta_min");
        continue;
      }
      if (!have_header) throw std::runtime_error("record before the header line");
      if (kind != "pivot" && kind != "reroute") throw std::runtime_error("unknown record kind '" + kind + "'");
      LoggedRecord r;
      r.is_pivot = kind == "pivot";
      r.iteration = j.at("iteration").get<long>();
      r.entering = j.at("entering").get<int>();
      r.leaving = j.at("leaving").get<int>();
      const auto label = parse_case_label(j.at("label").get<std::string>());
      if (!label) throw std::runtime_error("unknown case label");
      r.label = *label;
      r.degenerate = j.at("degenerate").get<bool>();
      r.step = json_scalar(j.at("step"));
      r.objective_before = json_scalar(j.at("objective_before"));
      r.objective_after = json_scalar(j.at("objective_after"));
      r.feasible_after = j.value("feasible_after", true);
      r.pivot_element = json_opt_scalar(j, "pivot_element");
      if (j.contains("q2_before")) r.q2_before = j["q2_before"].get<int>();
      if (j.contains("q2_after")) r.q2_after = j["q2_after"].get<int>();
      r.direction_cost = json_opt_scalar(j, "direction_cost");
      r.direction_at_leaving = json_opt_scalar(j, "direction_at_leaving");
      r.alpha = json_opt_scalar(j, "alpha");
      if (j.contains("direction"))
        for (const auto& v : j["direction"]) r.direction.push_back(json_scalar(v));
      if (j.contains("basis_before")) r.basis_before = j["basis_before"].get<std::vector<int>>();
      run.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("log line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("log has no header line");
  return run;
}

namespace {

class Compare {
 public:
  explicit Compare(bool exact) : exact_(exact) {}
  bool le(const Rational& a, const Rational& b) const { return exact_ ? a <= b : a.get_d() <= b.get_d() + slack(a, b); }
  bool eq(const Rational& a, const Rational& b) const {
    return exact_ ? a == b : std::fabs(a.get_d() - b.get_d()) <= slack(a, b);
  }
  bool zero(const Rational& a) const { return eq(a, Rational(0)); }
  bool positive(const Rational& a) const { return exact_ ? a > 0 : a.get_d() > slack(a, Rational(0)); }

 private:
  static double slack(const Rational& a, const Rational& b) {
    return 1e-9 * (1.0 + std::max(std::fabs(a.get_d()), std::fabs(b.get_d())));
  }
  bool exact_;
};

}  // namespace

std::vector<Violation> check_run(const LoggedRun& run, const BoundReport& report) {
  std::vector<Violation> out;
  const Compare cmp(run.numeric == Numeric::kRational);
  auto add = [&](long pivot, const char* claim, std::string detail) { out.push_back({pivot, claim, std::move(detail)}); };
  const auto& recs = run.records;

  // Monotonicity and feasibility apply to every rule.
  std::optional<Rational> prev_after;
  for (const LoggedRecord& r : recs) {
    if (!r.is_pivot) continue;
    if (!r.feasible_after) add(r.iteration, "feasibility", "basis after the pivot is infeasible");
    if (!cmp.le(r.objective_after, r.objective_before)) add(r.iteration, "monotonicity", "objective increased");
    if (r.degenerate && !cmp.eq(r.objective_after, r.objective_before)) {
      add(r.iteration, "monotonicity", "degenerate pivot changed the objective");
    }
    if (run.numeric == Numeric::kRational) {
      if (!r.degenerate && r.objective_after == r.objective_before) {
        add(r.iteration, "monotonicity", "non-degenerate pivot kept the objective");
      }
      if (r.degenerate != (r.step == 0)) add(r.iteration, "monotonicity", "degenerate flag disagrees with the step");
    }
    if (prev_after && !cmp.eq(r.objective_before, *prev_after)) {
      add(r.iteration, "monotonicity", "objective changed between pivots");
    }
    prev_after = r.objective_after;
  }
  if (run.rule != rule_name(RuleKind::kAntistalling)) return out;

  const bool dims = run.n > run.m && run.m >= 1;
  const long thm1 = dims ? degenerate_pivot_cap(run.n, run.m, false) : 0;
  const long rem1 = dims ? degenerate_pivot_cap(run.n, run.m, true) : 0;
  long streak = 0, finisher = 0, vertex_changes = 0, total = 0;
  int q2_carry = -1;                     // |Q2| after the previous degenerate pivot at this vertex, -1 if none
  std::optional<Rational> cost_carry;    // c'y of the previous record at this vertex
  std::vector<Rational> y_arrival;       // direction on arrival at this vertex

  for (std::size_t k = 0; k < recs.size(); ++k) {
    const LoggedRecord& r = recs[k];
    if (r.label == CaseLabel::kClassic) {
      add(r.iteration, "case_labels", "classic record in an antistalling run");
      continue;
    }
    if (!r.is_pivot) {
      // Case III reroute: must be followed by the matching Case II pivot.
      if (r.label != CaseLabel::kCaseIII) add(r.iteration, "case3_coupling", "reroute record not labeled III");
      const LoggedRecord* next = k + 1 < recs.size() ? &recs[k + 1] : nullptr;
      if (!next || !next->is_pivot || next->label != CaseLabel::kCaseIIIThenII) {
        add(r.iteration, "case3_coupling", "reroute not followed by a III->II pivot");
      } else {
        if (next->entering != r.entering || next->leaving != r.leaving) {
          add(r.iteration, "case3_coupling", "pivot after the reroute uses different indices");
        }
        if (!next->degenerate) add(r.iteration, "case3_coupling", "pivot after the reroute is not degenerate");
        if (!next->direction_at_leaving || !cmp.zero(*next->direction_at_leaving)) {
          add(r.iteration, "case3_coupling", "rerouted y is not zero at the leaving index");
        }
        if (!next->pivot_element || !cmp.positive(*next->pivot_element)) {
          add(r.iteration, "case3_coupling", "Abar_gf is not positive");
        }
        if (!r.basis_before.empty() && !next->basis_before.empty() && r.basis_before != next->basis_before) {
          add(r.iteration, "case3_coupling", "basis changed between reroute and pivot");
        }
        if (r.alpha && r.direction_at_leaving && next->pivot_element &&
            !cmp.eq(*r.direction_at_leaving, *r.alpha * *next->pivot_element)) {
          add(r.iteration, "case3_coupling", "alpha does not zero y_g");
        }
      }
      if (!r.alpha || !cmp.positive(*r.alpha)) add(r.iteration, "case3_coupling", "alpha is not positive");
      if (r.q2_before && r.q2_after && *r.q2_before != *r.q2_after) {
        add(r.iteration, "q2_descent", "reroute changed |Q2|");
      }
    } else if (r.label == CaseLabel::kCaseIIIThenII && (k == 0 || recs[k - 1].is_pivot)) {
      add(r.iteration, "case3_coupling", "III->II pivot without a preceding reroute");
    }

    if (r.label == CaseLabel::kFinisher) {
      ++finisher;
      ++total;
      if (!r.degenerate) add(r.iteration, "finisher", "finishing pivot is not degenerate");
      continue;
    }

    // Direction bookkeeping at the current vertex.
    if (y_arrival.empty() && !r.direction.empty()) y_arrival = r.direction;
    if (r.direction_cost) {
      if (cost_carry && !cmp.le(*r.direction_cost, *cost_carry)) {
        add(r.iteration, "lemma2a", "c'y increased at a vertex");
      }
      cost_carry = r.direction_cost;
    }
    if (!r.is_pivot) continue;
    ++total;

    if (r.q2_before && q2_carry >= 0 && *r.q2_before != q2_carry) {
      add(r.iteration, "q2_descent", "|Q2| changed between pivots at a vertex");
    }
    if (r.degenerate) {
      if (r.label == CaseLabel::kCaseI) add(r.iteration, "case_labels", "Case I pivot is degenerate");
      ++streak;
      if (dims && streak > thm1) {
        add(r.iteration, "theorem1", std::to_string(streak) + " consecutive degenerate pivots, cap " + std::to_string(thm1));
      }
      if (dims && run.guided && streak > rem1) {
        add(r.iteration, "remark1", std::to_string(streak) + " consecutive degenerate pivots, cap " + std::to_string(rem1));
      }
      if (!r.q2_before || !r.q2_after) {
        add(r.iteration, "q2_descent", "degenerate pivot without |Q2| data");
      } else if (*r.q2_after != *r.q2_before - 1) {
        add(r.iteration, "q2_descent",
            "|Q2| went from " + std::to_string(*r.q2_before) + " to " + std::to_string(*r.q2_after));
      }
      q2_carry = r.q2_after.value_or(-1);
      continue;
    }

    // Non-degenerate pivot: close the vertex.
    if (r.label != CaseLabel::kCaseI) add(r.iteration, "case_labels", "non-degenerate pivot not labeled I");
    if (!y_arrival.empty() && !r.direction.empty() && !r.basis_before.empty()) {
      std::vector<char> basic(run.n, 0);
      for (int j : r.basis_before) basic[j] = 1;
      for (int i = 0; i < run.n; ++i) {
        if (basic[i] || !cmp.positive(r.direction[i])) continue;
        if (!cmp.eq(r.direction[i], y_arrival[i])) {
          add(r.iteration, "lemma2b", "y_" + std::to_string(i) + " changed during the degenerate run");
          break;
        }
      }
    }
    if (run.guided && dims && run.optimal_objective && run.delta_max && run.delta_min && *run.delta_min > 0) {
      const Rational lambda = Rational(run.n - run.m) * *run.delta_max / *run.delta_min;
      const Rational before = r.objective_before - *run.optimal_objective;
      const Rational after = r.objective_after - *run.optimal_objective;
      const bool ok = run.numeric == Numeric::kRational
                          ? contraction_check(before, after, lambda)
                          : contraction_check(before.get_d(), after.get_d(), lambda.get_d());
      if (!ok) add(r.iteration, "lemma3", "optimality gap contracted too little");
    }
    ++vertex_changes;
    streak = 0;
    q2_carry = -1;
    cost_carry.reset();
    y_arrival.clear();
  }

  if (dims && finisher > run.n - run.m) {
    add(-1, "finisher", std::to_string(finisher) + " finishing pivots exceed n - m = " + std::to_string(run.n - run.m));
  }
  if (run.guided && report.lemma1_vertices && vertex_changes > *report.lemma1_vertices) {
    add(-1, "lemma1_vertices",
        std::to_string(vertex_changes) + " vertex changes exceed " + std::to_string(*report.lemma1_vertices));
  }
  if (run.guided && report.theorem2_total && total > *report.theorem2_total) {
    add(-1, "theorem2_total", std::to_string(total) + " pivots exceed " + std::to_string(*report.theorem2_total));
  }
  return out;
}

BoundReport report_from_log(const LoggedRun& run) {
  BoundReport b;
  b.n = run.n;
  b.m = run.m;
  b.antistalling = run.rule == rule_name(RuleKind::kAntistalling);
  b.guided = run.guided;
  b.delta_max = run.delta_max;
  b.delta_min = run.delta_min;
  b.compute_caps();
  long long streak = 0;
  for (const LoggedRecord& r : run.records) {
    if (!r.is_pivot) continue;
    ++b.observed_total_pivots;
    if (r.label == CaseLabel::kFinisher) {
      ++b.observed_finisher_pivots;
      continue;
    }
    if (r.degenerate) {
      b.observed_max_consecutive_degenerate = std::max(b.observed_max_consecutive_degenerate, ++streak);
    } else {
      streak = 0;
      ++b.observed_distinct_vertices;
    }
  }
  b.evaluate();
  return b;
}

namespace {

// Directions read from a JSON file:
//   {"target": [...]}                          guided toward a vertex, or
//   {"directions": [{"vertex": [...], "y": [...]}, ...]}
// Values may be numbers or strings such as "1/2".
template <class T>
class FileGuide : public DirectionSource<T> {
 public:
  explicit FileGuide(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open guide file '" + path + "'");
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw std::runtime_error("guide file '" + path + "' is not valid JSON: " + e.what());
    }
    auto vec = [](const json& a) {
      std::vector<T> v;
      for (const auto& e : a) v.push_back(ScalarTraits<T>::from_rational(json_scalar(e)));
      return v;
    };
    if (j.contains("target")) target_ = vec(j["target"]);
    if (j.contains("directions")) {
      for (const auto& d : j["directions"]) entries_.emplace_back(vec(d.at("vertex")), vec(d.at("y")));
    }
    if (!target_ && entries_.empty()) throw std::runtime_error("guide file '" + path + "' has no target or directions");
  }

  bool guided() const override { return target_.has_value(); }

  std::optional<std::vector<T>> direction(const SimplexState<T>& state) override {
    if (target_) {
      if (target_->size() != state.x().size()) throw InvalidDirection("guide target has the wrong dimension");
      if (!state.tol().less(state.lp().objective(*target_), state.objective())) return std::nullopt;
      std::vector<T> y(target_->size());
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = (*target_)[j] - state.x()[j];
      return y;
    }
    for (const auto& [vertex, y] : entries_) {
      if (vertex.size() != state.x().size()) continue;
      bool same = true;
      for (std::size_t j = 0; j < vertex.size() && same; ++j) same = state.tol().equal(vertex[j], state.x()[j]);
      if (same) return y;
    }
    return std::nullopt;
  }

 private:
  std::optional<std::vector<T>> target_;
  std::vector<std::pair<std::vector<T>, std::vector<T>>> entries_;
};

bool integral(const StandardLP<Rational>& lp) {
  for (int i = 0; i < lp.m; ++i) {
    if (lp.b[i].get_den() != 1) return false;
    for (int j = 0; j < lp.n; ++j)
      if (lp.A(i, j).get_den() != 1) return false;
  }
  return true;
}

std::string objective_text(const Rational& v, Numeric numeric) { return scalar_text(v, numeric); }

template <class T>
SolveResult<T> classic_solve(const StandardLP<T>& lp, RuleKind kind, const SolveOptions<T>& opts) {
  ClassicRule<T> rule(kind);
  return solve(lp, rule, opts);
}

template <class T>
void run_typed(const StandardLP<Rational>& exact_lp, const RunConfig& config, const std::optional<Enumeration>& oracle,
               RunOutcome& out) {
  StandardLP<T> lp;
  if constexpr (ScalarTraits<T>::kExact) {
    lp = exact_lp;
  } else {
    lp = to_float(exact_lp);
    lp.tolerance_override = config.tolerance;
  }

  SolveOptions<T> opts;
  opts.max_iterations = config.max_iterations;
  opts.initial_basis = config.initial_basis;
  opts.detail_log = config.detail_log;
  if (config.timeout_seconds > 0) {
    opts.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(config.timeout_seconds));
  }

  std::unique_ptr<PivotRule<T>> rule;
  std::optional<Rational> optimal_objective;
  if (config.rule != RuleKind::kAntistalling) {
    rule = std::make_unique<ClassicRule<T>>(config.rule);
    if (oracle && oracle->optimum) optimal_objective = *oracle->optimum;
  } else if (config.guide == GuideKind::kFile) {
    rule = std::make_unique<AntistallingRule<T>>(std::make_unique<FileGuide<T>>(config.guide_path));
  } else {
    // Pre-solve for x*, falling back to Bland if the pre-solve rule stalls.
    SolveOptions<T> pre_opts = opts;
    pre_opts.initial_basis.reset();
    pre_opts.detail_log = false;
    SolveResult<T> pre = classic_solve(lp, config.presolve_rule, pre_opts);
    if ((pre.status == SolveStatus::kCycled || pre.status == SolveStatus::kIterationLimit) &&
        config.presolve_rule != RuleKind::kBland) {
      out.notes.push_back(std::string("pre-solve with ") + rule_name(config.presolve_rule) + " ended " +
                          status_name(pre.status) + "; repeated with bland");
      pre = classic_solve(lp, RuleKind::kBland, pre_opts);
    }
    if (pre.status != SolveStatus::kOptimal) {
      out.status = pre.status;
      out.notes.push_back(std::string("pre-solve ended ") + status_name(pre.status) + "; no guide available");
      out.log.rule = rule_name(RuleKind::kAntistalling);
      out.log.guided = true;
      return;
    }
    optimal_objective = exact(pre.objective);
    std::optional<ContractionHook<T>> hook;
    if (oracle && oracle->delta_max && oracle->delta_min) {
      hook = ContractionHook<T>{pre.objective, ScalarTraits<T>::from_rational(*oracle->delta_max),
                                ScalarTraits<T>::from_rational(*oracle->delta_min)};
    }
    rule = std::make_unique<AntistallingRule<T>>(std::make_unique<OptimalGuide<T>>(pre.x, pre.basis), hook);
  }

  SolveResult<T> res = solve(lp, *rule, opts);
  out.status = res.status;
  out.guided = rule->guided();
  out.pivots = res.pivots;
  out.degenerate_pivots = res.degenerate_pivots;
  out.max_consecutive_degenerate = res.max_consecutive_degenerate;
  out.distinct_vertices = res.distinct_vertices;
  out.finisher_pivots = res.finisher_pivots;
  out.phase_one_pivots = res.phase_one_pivots;
  if (!res.message.empty()) out.notes.push_back(res.message);
  if (res.status == SolveStatus::kOptimal) {
    out.objective_exact = exact(res.original_objective);
    out.objective = objective_text(*out.objective_exact, out.numeric);
  }
  out.violations = res.violations;
  out.log = to_logged_run(res.log, out.instance, out.numeric);
  out.log.optimal_objective = optimal_objective;
  if (oracle) {
    out.log.delta_max = oracle->delta_max;
    out.log.delta_min = oracle->delta_min;
  }
}

}  // namespace

RunOutcome run_instance(const GeneralLP& gp, const std::string& instance, const RunConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  out.instance = instance;
  out.rule = rule_name(config.rule);
  out.numeric = config.numeric;

  StandardLP<Rational> lp = to_standard_form(gp);
  const ValidationReport vr = validate(lp);
  for (const auto& f : vr.findings) out.notes.push_back(f);
  if (vr.dimension_error) throw ModelError("standard form has inconsistent dimensions");
  out.n = lp.n;
  out.m = lp.m;
  out.bounds.n = lp.n;
  out.bounds.m = lp.m;
  out.bounds.antistalling = config.rule == RuleKind::kAntistalling;

  auto finish = [&]() {
    out.log.instance = instance;
    out.log.numeric = config.numeric;
    out.log.n = lp.n;
    out.log.m = lp.m;
    if (out.log.rule.empty()) out.log.rule = out.rule;
    out.bounds.guided = out.guided;
    out.bounds.compute_caps();
    out.bounds.observed_max_consecutive_degenerate = out.max_consecutive_degenerate;
    out.bounds.observed_distinct_vertices = std::max<long>(0, out.distinct_vertices - 1);
    out.bounds.observed_total_pivots = out.pivots;
    out.bounds.observed_finisher_pivots = out.finisher_pivots;
    out.bounds.evaluate();
    for (Violation& v : check_run(out.log, out.bounds)) out.violations.push_back(std::move(v));
    out.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  if (vr.infeasible) {
    out.status = SolveStatus::kInfeasible;
    finish();
    return out;
  }
  if (lp.m == 0) {
    // No constraints left: x = 0 is optimal unless some cost is negative.
    const bool unbounded = std::any_of(lp.c.begin(), lp.c.end(), [](const Rational& v) { return v < 0; });
    out.status = unbounded ? SolveStatus::kUnbounded : SolveStatus::kOptimal;
    if (!unbounded) {
      out.objective_exact = lp.original_objective(std::vector<Rational>(lp.n, Rational(0)));
      out.objective = objective_text(*out.objective_exact, config.numeric);
    }
    out.distinct_vertices = 1;
    finish();
    return out;
  }

  std::optional<Enumeration> oracle;
  if (lp.n <= config.oracle_max_n && binomial_capped(lp.n, lp.m, 1'000'000) <= 1'000'000) {
    oracle = enumerate_bases(lp, 1'000'000, 1);
    out.bounds.delta_max = oracle->delta_max;
    out.bounds.delta_min = oracle->delta_min;
  }
  if (integral(lp)) {
    Rational bl1 = 0;
    for (const Rational& v : lp.b) bl1 += abs(v);
    if (bl1 >= 1) {
      out.bounds.b_l1 = bl1;
      if (lp.n <= config.oracle_max_n) out.bounds.delta_a = max_abs_subdeterminant(lp.A, 20'000);
    }
  }

  if (config.numeric == Numeric::kRational) {
    run_typed<Rational>(lp, config, oracle, out);
  } else {
    run_typed<double>(lp, config, oracle, out);
  }
  finish();
  return out;
}

std::string run_report_json(const RunOutcome& r) {
  json j;
  j["instance"] = r.instance;
  j["n"] = r.n;
  j["m"] = r.m;
  j["rule"] = r.rule;
  j["numeric"] = numeric_name(r.numeric);
  j["guided"] = r.guided;
  j["status"] = r.error ? "Error" : status_name(r.status);
  if (r.error) j["error"] = *r.error;
  j["objective"] = r.objective.empty() ? json(nullptr) : json(r.objective);
  j["pivots_total"] = r.pivots;
  j["pivots_degenerate"] = r.degenerate_pivots;
  j["max_consec_degenerate"] = r.max_consecutive_degenerate;
  j["distinct_vertices"] = r.distinct_vertices;
  j["finisher_pivots"] = r.finisher_pivots;
  j["phase_one_pivots"] = r.phase_one_pivots;
  const BoundReport& b = r.bounds;
  auto opt_ll = [](const std::optional<long long>& v) { return v ? json(*v) : json(nullptr); };
  auto opt_q = [](const std::optional<Rational>& v) { return v ? json(to_string(*v)) : json(nullptr); };
  j["bounds"] = {{"theorem1_cap", b.theorem1_cap},
                 {"remark1_cap", b.remark1_cap},
                 {"lemma1_vertices", opt_ll(b.lemma1_vertices)},
                 {"theorem2_total", opt_ll(b.theorem2_total)},
                 {"theorem2_with_finisher", opt_ll(b.theorem2_with_finisher)},
                 {"corollary1_total", opt_ll(b.corollary1_total)},
                 {"delta_max", opt_q(b.delta_max)},
                 {"delta_min", opt_q(b.delta_min)},
                 {"delta_a", opt_q(b.delta_a)},
                 {"b_l1", opt_q(b.b_l1)},
                 {"verdicts", b.verdict_string()}};
  json v = json::array();
  for (const Violation& x : r.violations) v.push_back({{"pivot", x.pivot}, {"claim", x.claim}, {"detail", x.detail}});
  j["violations"] = std::move(v);
  j["notes"] = r.notes;
  j["time_ms"] = r.time_ms;
  return j.dump(2);
}

namespace {

std::string instance_name(const Generated& g) {
  std::string s = g.family;
  for (const auto& [k, v] : g.params) s += "_" + k + "=" + v;
  return s;
}

void add_generated(std::vector<InstanceSpec>& out, const std::string& family, std::map<std::string, std::string> params) {
  try {
    Generated g = generate(family, params);
    out.push_back({instance_name(g), std::move(g.lp)});
  } catch (const GeneratorError&) {
    // Random draws can produce empty graphs; such instances are left out.
  }
}

}  // namespace

std::vector<InstanceSpec> family_instances(const std::string& family, std::uint64_t seed_lo, std::uint64_t seed_hi,
                                           const std::map<std::string, std::string>& params) {
  std::vector<InstanceSpec> out;
  if (family == "all") {
    for (std::uint64_t s = seed_lo; s <= seed_hi; ++s) {
      const std::string seed = std::to_string(s);
      add_generated(out, "bipartite_matching", {{"left", "3"}, {"right", "3"}, {"density", "0.5"}, {"seed", seed}});
      add_generated(out, "bipartite_matching", {{"left", "2"}, {"right", "3"}, {"density", "0.7"}, {"seed", seed}});
      for (const char* v : {"matching", "vertex_cover", "edge_cover", "stable_set"}) {
        add_generated(out, "fractional_matching", {{"nodes", "5"}, {"density", "0.5"}, {"seed", seed}, {"variant", v}});
      }
      add_generated(out, "stable_marriage", {{"n", "2"}, {"seed", seed}});
      for (const char* k : {"max_flow", "min_cost_flow", "circulation"}) {
        add_generated(out, "unit_flow", {{"kind", k}, {"nodes", "4"}, {"density", "0.3"}, {"seed", seed}});
      }
      add_generated(out, "degenerate_pyramid", {{"d", "3"}, {"seed", seed}});
      add_generated(out, "degenerate_pyramid", {{"d", "4"}, {"seed", seed}});
    }
    for (const char* d : {"2", "3", "4"}) add_generated(out, "klee_minty", {{"d", d}});
    add_generated(out, "beale_cycle", {});
    for (const char* n : {"lp_a", "lp_b", "lp_c"}) add_generated(out, "named", {{"name", n}});
    return out;
  }
  const bool seeded = family != "klee_minty" && family != "beale_cycle" && family != "named";
  if (!seeded) {
    Generated g = generate(family, params);
    out.push_back({instance_name(g), std::move(g.lp)});
    return out;
  }
  for (std::uint64_t s = seed_lo; s <= seed_hi; ++s) {
    auto p = params;
    p["seed"] = std::to_string(s);
    Generated g = generate(family, p);
    out.push_back({instance_name(g), std::move(g.lp)});
  }
  return out;
}

std::vector<InstanceSpec> directory_instances(const std::string& dir, std::vector<std::string>* skipped) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".mps") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<InstanceSpec> out;
  for (const auto& f : files) {
    try {
      GeneralLP lp = read_mps_file(f.string());
      to_standard_form(lp);  // rejects free variables early
      out.push_back({f.stem().string(), std::move(lp)});
    } catch (const std::exception& e) {
      if (skipped) skipped->push_back(f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

const char* const kCsvHeader =
    "instance,n,m,rule,status,pivots_total,pivots_degenerate,max_consec_degenerate,distinct_vertices,objective,"
    "thm1_cap,remark1_cap,thm2_cap,verdicts,time_ms";

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::string csv_row(const RunOutcome& r) {
  std::string verdicts = r.bounds.verdict_string();
  verdicts += ";violations=" + std::to_string(r.violations.size());
  const bool dims = r.n > r.m && r.m >= 1;
  std::vector<std::string> f = {csv_field(r.instance),
                                std::to_string(r.n),
                                std::to_string(r.m),
                                r.rule,
                                r.error ? "Error" : status_name(r.status),
                                std::to_string(r.pivots),
                                std::to_string(r.degenerate_pivots),
                                std::to_string(r.max_consecutive_degenerate),
                                std::to_string(r.distinct_vertices),
                                csv_field(r.objective),
                                dims ? std::to_string(r.bounds.theorem1_cap) : "",
                                dims ? std::to_string(r.bounds.remark1_cap) : "",
                                r.bounds.theorem2_total ? std::to_string(*r.bounds.theorem2_total) : "",
                                csv_field(verdicts),
                                fixed(r.time_ms, 3)};
  std::string line;
  for (std::size_t k = 0; k < f.size(); ++k) line += (k ? "," : "") + f[k];
  return line;
}

std::string summary_csv(const std::vector<RunOutcome>& runs, const std::vector<RuleKind>& rules) {
  std::string out = "rule,runs,optimal,mean,median,q25,q75\n";
  for (RuleKind k : rules) {
    std::vector<double> p;
    long optimal = 0;
    for (const RunOutcome& r : runs) {
      if (r.rule != rule_name(k)) continue;
      p.push_back(static_cast<double>(r.pivots));
      if (r.status == SolveStatus::kOptimal) ++optimal;
    }
    double mean = 0;
    for (double v : p) mean += v;
    if (!p.empty()) mean /= static_cast<double>(p.size());
    out += std::string(rule_name(k)) + "," + std::to_string(p.size()) + "," + std::to_string(optimal) + "," +
           fixed(mean, 4) + "," + fixed(quantile(p, 0.5), 4) + "," + fixed(quantile(p, 0.25), 4) + "," +
           fixed(quantile(p, 0.75), 4) + "\n";
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  struct Job {
    std::size_t instance;
    RuleKind rule;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < config.instances.size(); ++i)
    for (RuleKind k : config.rules) jobs.push_back({i, k});

  ExperimentResult result;
  result.runs.resize(jobs.size());
  auto work = [&](std::size_t idx) {
    const Job& job = jobs[idx];
    const InstanceSpec& spec = config.instances[job.instance];
    RunConfig rc = config.base;
    rc.rule = job.rule;
    try {
      result.runs[idx] = run_instance(spec.lp, spec.name, rc);
    } catch (const std::exception& e) {
      RunOutcome& r = result.runs[idx];
      r.instance = spec.name;
      r.rule = rule_name(job.rule);
      r.numeric = rc.numeric;
      r.error = e.what();
      r.violations.push_back({-1, "error", e.what()});
    }
  };

  unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, jobs.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) work(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  result.csv = std::string(kCsvHeader) + "\n";
  for (const RunOutcome& r : result.runs) {
    result.csv += csv_row(r) + "\n";
    result.violation_count += static_cast<long>(r.violations.size());
  }
  result.summary_csv = summary_csv(result.runs, config.rules);
  return result;
}

}  // namespace antistall
