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

// astall: command-line front end over the C API.
// Exit codes: 0 success, 2 violations found, 3 parse or setup error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "antistall/antistall.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 2;
constexpr int kExitError = 3;

using nlohmann::json;

// Owns a string returned by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { astall_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int report_error(const std::string& what, astall_status s) {
  std::cerr << "astall: " << what << ": " << astall_status_string(s) << ": " << astall_last_error() << "\n";
  return kExitError;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "astall: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "k=v,k=v" or a JSON object.
bool params_to_json(const std::string& text, std::string& out) {
  if (text.empty()) {
    out = "{}";
    return true;
  }
  if (text.front() == '{') {
    out = text;
    return true;
  }
  json j = json::object();
  for (const std::string& kv : split(text, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "astall: parameter '" << kv << "' is not key=value\n";
      return false;
    }
    j[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  out = j.dump();
  return true;
}

bool parse_seeds(const std::string& text, unsigned long long& lo, unsigned long long& hi) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      lo = hi = std::stoull(text);
    } else {
      lo = std::stoull(text.substr(0, dots));
      hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

struct ModelHandle {
  astall_model* p = nullptr;
  ~ModelHandle() { astall_model_free(p); }
};

struct RunHandle {
  astall_run* p = nullptr;
  ~RunHandle() { astall_run_free(p); }
};

struct SolveArgs {
  std::string mps;
  std::string rule = "antistalling";
  std::string guide = "optimal";
  std::string presolve = "dantzig";
  std::string numeric = "rational";
  long max_iter = -1;
  double tol = 0;
  double timeout = 1800;
  std::string log;
  std::string report;
};

int cmd_solve(const SolveArgs& a) {
  ModelHandle model;
  if (astall_status s = astall_model_read_mps(a.mps.c_str(), &model.p); s != ASTALL_OK) return report_error(a.mps, s);
  LibString warnings;
  if (astall_model_warnings_json(model.p, &warnings.p) == ASTALL_OK) {
    for (const auto& w : json::parse(warnings.str())) {
      std::cerr << "astall: " << a.mps << ":" << w["line"].get<int>() << ": warning: " << w["message"].get<std::string>()
                << "\n";
    }
  }
  astall_solve_options o;
  astall_solve_options_init(&o);
  o.rule = a.rule.c_str();
  o.guide = a.guide.c_str();
  o.presolve_rule = a.presolve.c_str();
  o.numeric = a.numeric.c_str();
  o.max_iterations = a.max_iter;
  o.tolerance = a.tol;
  o.timeout_seconds = a.timeout;
  if (!a.log.empty()) o.detail_log = 1;
  RunHandle run;
  if (astall_status s = astall_solve(model.p, a.mps.c_str(), &o, &run.p); s != ASTALL_OK) return report_error("solve", s);

  LibString report;
  if (astall_status s = astall_run_report_json(run.p, &report.p); s != ASTALL_OK) return report_error("report", s);
  if (!a.log.empty()) {
    LibString log;
    if (astall_status s = astall_run_log_jsonl(run.p, &log.p); s != ASTALL_OK) return report_error("log", s);
    if (!write_file(a.log, log.str())) return kExitError;
  }
  if (!a.report.empty() && !write_file(a.report, report.str() + "\n")) return kExitError;
  std::cout << report.str() << "\n";
  return astall_run_violation_count(run.p) > 0 ? kExitViolations : kExitOk;
}

struct ExperimentArgs {
  std::string dir;
  std::string family;
  std::string params;
  std::string seeds = "1..1";
  std::string rules = "all";
  std::string numeric = "rational";
  std::string csv;
  std::string summary;
  std::string presolve = "dantzig";
  long max_iter = -1;
  double timeout = 1800;
  unsigned workers = 0;
};

int cmd_experiment(const ExperimentArgs& a) {
  json cfg;
  if (!a.dir.empty()) {
    cfg["dir"] = a.dir;
  } else {
    cfg["family"] = a.family;
    unsigned long long lo = 0, hi = 0;
    if (!parse_seeds(a.seeds, lo, hi)) {
      std::cerr << "astall: --seeds must look like A..B with A <= B\n";
      return kExitError;
    }
    cfg["seed_lo"] = lo;
    cfg["seed_hi"] = hi;
    std::string params;
    if (!params_to_json(a.params, params)) return kExitError;
    cfg["params"] = json::parse(params);
  }
  if (a.rules == "all") {
    cfg["rules"] = {"dantzig", "bland", "lifo", "most_frequent", "steepest_edge", "antistalling"};
  } else {
    cfg["rules"] = split(a.rules, ',');
  }
  cfg["numeric"] = a.numeric;
  cfg["presolve_rule"] = a.presolve;
  cfg["max_iterations"] = a.max_iter;
  cfg["timeout_seconds"] = a.timeout;
  cfg["workers"] = a.workers;

  LibString result;
  if (astall_status s = astall_experiment(cfg.dump().c_str(), &result.p); s != ASTALL_OK) {
    return report_error("experiment", s);
  }
  const json r = json::parse(result.str());
  for (const auto& s : r["skipped"]) std::cerr << "astall: skipped " << s.get<std::string>() << "\n";
  if (!write_file(a.csv, r["csv"].get<std::string>())) return kExitError;
  std::string summary_path = a.summary;
  if (summary_path.empty()) {
    summary_path = a.csv;
    const auto dot = summary_path.rfind(".csv");
    if (dot != std::string::npos && dot + 4 == summary_path.size()) summary_path.resize(dot);
    summary_path += ".summary.csv";
  }
  if (!write_file(summary_path, r["summary_csv"].get<std::string>())) return kExitError;
  for (const auto& v : r["violation_details"]) {
    std::cerr << "violation: " << v["instance"].get<std::string>() << " " << v["rule"].get<std::string>() << " pivot "
              << v["pivot"].get<long>() << " " << v["claim"].get<std::string>() << ": " << v["detail"].get<std::string>()
              << "\n";
  }
  std::cout << r["runs"].get<long>() << " runs, " << r["violations"].get<long>() << " violations\n"
            << r["summary_csv"].get<std::string>();
  return r["violations"].get<long>() > 0 ? kExitViolations : kExitOk;
}

int cmd_generate(const std::string& family, const std::string& params_text, const std::string& out) {
  std::string params;
  if (!params_to_json(params_text, params)) return kExitError;
  ModelHandle model;
  LibString sidecar;
  if (astall_status s = astall_model_generate(family.c_str(), params.c_str(), &model.p, &sidecar.p); s != ASTALL_OK) {
    return report_error("generate", s);
  }
  LibString mps;
  if (astall_status s = astall_model_to_mps(model.p, &mps.p); s != ASTALL_OK) return report_error("write", s);
  std::string side_path = out;
  const auto dot = side_path.rfind(".mps");
  if (dot != std::string::npos && dot + 4 == side_path.size()) side_path.resize(dot);
  side_path += ".json";
  if (!write_file(out, mps.str()) || !write_file(side_path, sidecar.str())) return kExitError;
  std::cout << "wrote " << out << " and " << side_path << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& mps, long long cap) {
  ModelHandle model;
  if (astall_status s = astall_model_read_mps(mps.c_str(), &model.p); s != ASTALL_OK) return report_error(mps, s);
  LibString out;
  if (astall_status s = astall_oracle_json(model.p, cap, &out.p); s != ASTALL_OK) return report_error("oracle", s);
  std::cout << out.str() << "\n";
  return kExitOk;
}

int cmd_check(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "astall: cannot read '" << path << "'\n";
    return kExitError;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  LibString report;
  long violations = 0;
  if (astall_status s = astall_check_log(ss.str().c_str(), &report.p, &violations); s != ASTALL_OK) {
    return report_error(path, s);
  }
  std::cout << report.str() << "\n";
  return violations > 0 ? kExitViolations : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplex pivot-rule experiments with an antistalling rule"};
  app.require_subcommand(1);
  app.set_version_flag("--version", astall_version());

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve one MPS model and check the run");
  solve->add_option("--mps", sa.mps, "MPS file")->required();
  solve->add_option("--rule", sa.rule, "dantzig|bland|lifo|most_frequent|steepest_edge|antistalling");
  solve->add_option("--guide", sa.guide, "optimal or file:PATH");
  solve->add_option("--presolve-rule", sa.presolve, "rule used to find x* for the optimal guide");
  solve->add_option("--numeric", sa.numeric, "float or rational")->check(CLI::IsMember({"float", "rational"}));
  solve->add_option("--max-iter", sa.max_iter, "pivot limit (-1: 10 (n+m)^2)");
  solve->add_option("--tol", sa.tol, "float zero threshold");
  solve->add_option("--timeout", sa.timeout, "seconds");
  solve->add_option("--log", sa.log, "write the JSON-lines run log here");
  solve->add_option("--report", sa.report, "also write the JSON report here");

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "Run an instance x rule grid and write CSV");
  auto* dir_opt = exp->add_option("--dir", ea.dir, "directory of MPS files");
  auto* fam_opt = exp->add_option("--family", ea.family, "generator family or 'all'");
  dir_opt->excludes(fam_opt);
  exp->add_option("--params", ea.params, "k=v,k=v or JSON object");
  exp->add_option("--seeds", ea.seeds, "A..B");
  exp->add_option("--rules", ea.rules, "comma-separated rules or 'all'");
  exp->add_option("--numeric", ea.numeric, "float or rational")->check(CLI::IsMember({"float", "rational"}));
  exp->add_option("--csv", ea.csv, "per-run CSV")->required();
  exp->add_option("--summary", ea.summary, "per-rule summary CSV (default: <csv>.summary.csv)");
  exp->add_option("--presolve-rule", ea.presolve, "rule used to find x*");
  exp->add_option("--max-iter", ea.max_iter, "pivot limit per run");
  exp->add_option("--timeout", ea.timeout, "seconds per run");
  exp->add_option("--workers", ea.workers, "worker threads (0: all cores)");

  std::string gen_family, gen_params, gen_out;
  auto* gen = app.add_subcommand("generate", "Write a generated instance as MPS plus a JSON sidecar");
  gen->add_option("--family", gen_family, "generator family")->required();
  gen->add_option("--params", gen_params, "k=v,k=v or JSON object");
  gen->add_option("--out", gen_out, "output MPS path")->required();

  std::string oracle_mps;
  long long oracle_cap = 1'000'000;
  auto* orc = app.add_subcommand("oracle", "Enumerate all bases of a small model");
  orc->add_option("--mps", oracle_mps, "MPS file")->required();
  orc->add_option("--cap", oracle_cap, "largest C(n,m) to enumerate");

  std::string check_log;
  auto* chk = app.add_subcommand("check", "Re-check a run log");
  chk->add_option("--log", check_log, "JSON-lines run log")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(sa);
    if (*exp) {
      if (ea.dir.empty() && ea.family.empty()) {
        std::cerr << "astall: experiment needs --dir or --family\n";
        return kExitError;
      }
      return cmd_experiment(ea);
    }
    if (*gen) return cmd_generate(gen_family, gen_params, gen_out);
    if (*orc) return cmd_oracle(oracle_mps, oracle_cap);
    if (*chk) return cmd_check(check_log);
  } catch (const std::exception& e) {
    std::cerr << "astall: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
