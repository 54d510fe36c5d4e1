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

#include "antistall/antistall.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/harness.hpp"
#include "core/mps.hpp"
#include "core/oracle.hpp"
#include "json.hpp"

using nlohmann::json;

struct astall_model {
  antistall::GeneralLP lp;
  std::vector<antistall::MpsWarning> warnings;
};

struct astall_run {
  antistall::RunOutcome outcome;
};

namespace {

thread_local std::string g_last_error;

astall_status fail(astall_status s, const std::string& message) {
  g_last_error = message;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
astall_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const antistall::MpsError& e) {
    return fail(e.line() == 0 ? ASTALL_E_IO : ASTALL_E_PARSE, e.what());
  } catch (const json::exception& e) {
    return fail(ASTALL_E_PARSE, e.what());
  } catch (const antistall::ModelError& e) {
    return fail(ASTALL_E_MODEL, e.what());
  } catch (const antistall::GeneratorError& e) {
    return fail(ASTALL_E_ARGUMENT, e.what());
  } catch (const antistall::OracleError& e) {
    return fail(ASTALL_E_SETUP, e.what());
  } catch (const antistall::BasisError& e) {
    return fail(ASTALL_E_SETUP, e.what());
  } catch (const std::logic_error& e) {
    return fail(ASTALL_E_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ASTALL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ASTALL_E_SETUP, e.what());
  }
}

std::map<std::string, std::string> params_from_json(const char* text) {
  std::map<std::string, std::string> out;
  if (!text || !*text) return out;
  const json j = json::parse(text);
  if (!j.is_object()) throw antistall::GeneratorError("params must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_string()) {
      out[it.key()] = it->get<std::string>();
    } else if (it->is_number_integer()) {
      out[it.key()] = std::to_string(it->get<long long>());
    } else if (it->is_number()) {
      out[it.key()] = it->dump();
    } else {
      throw antistall::GeneratorError("parameter '" + it.key() + "' must be a string or number");
    }
  }
  return out;
}

antistall::RuleKind rule_or_throw(const char* name) {
  const auto r = antistall::parse_rule(name ? name : "");
  if (!r) throw std::invalid_argument(std::string("unknown rule '") + (name ? name : "") + "'");
  return *r;
}

json rational_vector(const std::vector<antistall::Rational>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(antistall::to_string(e));
  return a;
}

}  // namespace

extern "C" {

const char* astall_version(void) { return "1.0.0"; }

const char* astall_status_string(astall_status s) {
  switch (s) {
    case ASTALL_OK: return "ok";
    case ASTALL_E_ARGUMENT: return "invalid argument";
    case ASTALL_E_PARSE: return "parse error";
    case ASTALL_E_MODEL: return "model error";
    case ASTALL_E_IO: return "i/o error";
    case ASTALL_E_SETUP: return "setup error";
    case ASTALL_E_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* astall_last_error(void) { return g_last_error.c_str(); }

void astall_string_free(char* s) { std::free(s); }

astall_status astall_model_from_mps(const char* text, astall_model** out) {
  if (!text || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = std::make_unique<astall_model>();
    m->lp = antistall::parse_mps(text, &m->warnings);
    *out = m.release();
    return ASTALL_OK;
  });
}

astall_status astall_model_read_mps(const char* path, astall_model** out) {
  if (!path || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = std::make_unique<astall_model>();
    m->lp = antistall::read_mps_file(path, &m->warnings);
    *out = m.release();
    return ASTALL_OK;
  });
}

astall_status astall_model_generate(const char* family, const char* params_json, astall_model** out,
                                    char** sidecar_json) {
  if (!family || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    antistall::Generated g = antistall::generate(family, params_from_json(params_json));
    std::string sidecar;
    if (sidecar_json) {
      json j = {{"family", g.family},
                {"name", g.lp.name},
                {"params", g.params},
                {"rows", g.lp.num_rows()},
                {"cols", g.lp.num_cols()},
                {"sense", g.lp.sense == antistall::Sense::kMaximize ? "max" : "min"}};
      j["seed"] = g.seed ? json(*g.seed) : json(nullptr);
      j["known_optimum"] = g.known_optimum ? json(antistall::to_string(*g.known_optimum)) : json(nullptr);
      sidecar = j.dump(2) + "\n";
    }
    auto m = std::make_unique<astall_model>();
    m->lp = std::move(g.lp);
    if (sidecar_json) *sidecar_json = dup(sidecar);
    *out = m.release();
    return ASTALL_OK;
  });
}

astall_status astall_model_to_mps(const astall_model* model, char** out) {
  if (!model || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(antistall::write_mps(model->lp));
    return ASTALL_OK;
  });
}

astall_status astall_model_dims(const astall_model* model, int* rows, int* cols) {
  if (!model) return fail(ASTALL_E_ARGUMENT, "null argument");
  if (rows) *rows = model->lp.num_rows();
  if (cols) *cols = model->lp.num_cols();
  return ASTALL_OK;
}

astall_status astall_model_warnings_json(const astall_model* model, char** out) {
  if (!model || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    json a = json::array();
    for (const auto& w : model->warnings) a.push_back({{"line", w.line}, {"message", w.message}});
    *out = dup(a.dump());
    return ASTALL_OK;
  });
}

void astall_model_free(astall_model* model) { delete model; }

void astall_solve_options_init(astall_solve_options* o) {
  if (!o) return;
  o->rule = "antistalling";
  o->guide = "optimal";
  o->presolve_rule = "dantzig";
  o->numeric = "rational";
  o->max_iterations = -1;
  o->tolerance = 0;
  o->timeout_seconds = 1800.0;
  o->detail_log = -1;
  o->initial_basis = nullptr;
  o->initial_basis_size = 0;
  o->oracle_max_n = 14;
}

astall_status astall_solve(const astall_model* model, const char* instance, const astall_solve_options* options,
                           astall_run** out) {
  if (!model || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  astall_solve_options defaults;
  astall_solve_options_init(&defaults);
  const astall_solve_options& o = options ? *options : defaults;
  antistall::RunConfig rc;
  try {
    rc.rule = rule_or_throw(o.rule);
    rc.presolve_rule = rule_or_throw(o.presolve_rule ? o.presolve_rule : "dantzig");
    const auto nm = antistall::parse_numeric(o.numeric ? o.numeric : "rational");
    if (!nm) return fail(ASTALL_E_ARGUMENT, std::string("unknown numeric mode '") + o.numeric + "'");
    rc.numeric = *nm;
  } catch (const std::invalid_argument& e) {
    return fail(ASTALL_E_ARGUMENT, e.what());
  }
  const std::string guide = o.guide ? o.guide : "optimal";
  if (guide.rfind("file:", 0) == 0) {
    rc.guide = antistall::GuideKind::kFile;
    rc.guide_path = guide.substr(5);
  } else if (guide != "optimal") {
    return fail(ASTALL_E_ARGUMENT, "guide must be 'optimal' or 'file:PATH'");
  }
  rc.max_iterations = o.max_iterations;
  if (o.tolerance > 0) rc.tolerance = o.tolerance;
  rc.timeout_seconds = o.timeout_seconds;
  if (o.detail_log >= 0) rc.detail_log = o.detail_log != 0;
  if (o.initial_basis) {
    if (o.initial_basis_size <= 0) return fail(ASTALL_E_ARGUMENT, "initial_basis_size must be positive");
    rc.initial_basis = antistall::Basis{std::vector<int>(o.initial_basis, o.initial_basis + o.initial_basis_size)};
  }
  rc.oracle_max_n = o.oracle_max_n;
  return guarded([&] {
    auto run = std::make_unique<astall_run>();
    run->outcome = antistall::run_instance(model->lp, instance ? instance : model->lp.name, rc);
    *out = run.release();
    return ASTALL_OK;
  });
}

void astall_run_free(astall_run* run) { delete run; }

const char* astall_run_status(const astall_run* run) {
  return run ? antistall::status_name(run->outcome.status) : "";
}
long astall_run_pivots(const astall_run* run) { return run ? run->outcome.pivots : -1; }
long astall_run_degenerate_pivots(const astall_run* run) { return run ? run->outcome.degenerate_pivots : -1; }
long astall_run_max_consecutive_degenerate(const astall_run* run) {
  return run ? run->outcome.max_consecutive_degenerate : -1;
}
long astall_run_distinct_vertices(const astall_run* run) { return run ? run->outcome.distinct_vertices : -1; }
long astall_run_violation_count(const astall_run* run) {
  return run ? static_cast<long>(run->outcome.violations.size()) : -1;
}

astall_status astall_run_objective(const astall_run* run, char** out) {
  if (!run || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(run->outcome.objective);
    return ASTALL_OK;
  });
}

astall_status astall_run_log_jsonl(const astall_run* run, char** out) {
  if (!run || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(antistall::write_log_jsonl(run->outcome.log));
    return ASTALL_OK;
  });
}

astall_status astall_run_report_json(const astall_run* run, char** out) {
  if (!run || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(antistall::run_report_json(run->outcome));
    return ASTALL_OK;
  });
}

astall_status astall_run_csv_row(const astall_run* run, char** out) {
  if (!run || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(antistall::csv_row(run->outcome));
    return ASTALL_OK;
  });
}

astall_status astall_oracle_json(const astall_model* model, long long cap, char** out) {
  if (!model || !out) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    antistall::StandardLP<antistall::Rational> lp = antistall::to_standard_form(model->lp);
    const antistall::ValidationReport vr = antistall::validate(lp);
    json j;
    j["n"] = lp.n;
    j["m"] = lp.m;
    j["findings"] = vr.findings;
    if (vr.infeasible) {
      j["status"] = "Infeasible";
      *out = dup(j.dump(2));
      return ASTALL_OK;
    }
    const antistall::Enumeration e = antistall::enumerate_bases(lp, cap > 0 ? cap : 1'000'000);
    long feasible = 0, degenerate = 0, optimal_bases = 0, nonoptimal_at_optimum = 0;
    for (const auto& b : e.bases) {
      if (!b.feasible) continue;
      ++feasible;
      if (b.degenerate) ++degenerate;
      if (b.optimal_basis) ++optimal_bases;
      if (b.optimal_vertex && !b.optimal_basis) ++nonoptimal_at_optimum;
    }
    j["status"] = antistall::status_name(e.status);
    j["subsets"] = e.subsets;
    j["nonsingular_bases"] = e.bases.size();
    j["feasible_bases"] = feasible;
    j["degenerate_feasible_bases"] = degenerate;
    j["vertices"] = e.vertices.size();
    j["optimal_bases"] = optimal_bases;
    j["nonoptimal_bases_at_optimum"] = nonoptimal_at_optimum;
    j["delta_max"] = e.delta_max ? json(antistall::to_string(*e.delta_max)) : json(nullptr);
    j["delta_min"] = e.delta_min ? json(antistall::to_string(*e.delta_min)) : json(nullptr);
    if (e.optimum) {
      j["optimum"] = antistall::to_string(*e.optimum);
      j["original_optimum"] = antistall::to_string(lp.original_objective(e.vertices[e.optimal_vertex]));
      j["optimal_vertex"] = rational_vector(e.vertices[e.optimal_vertex]);
      j["optimal_original"] = rational_vector(lp.recover(e.vertices[e.optimal_vertex]));
    }
    if (e.optimal_basis) j["optimal_basis"] = e.optimal_basis->columns;
    j["column_names"] = lp.column_names;
    *out = dup(j.dump(2));
    return ASTALL_OK;
  });
}

astall_status astall_check_log(const char* log_jsonl, char** report_json, long* violations) {
  if (!log_jsonl) return fail(ASTALL_E_ARGUMENT, "null argument");
  antistall::LoggedRun run;
  try {
    run = antistall::parse_log_jsonl(log_jsonl);
  } catch (const std::exception& e) {
    return fail(ASTALL_E_PARSE, e.what());
  }
  return guarded([&] {
    const antistall::BoundReport report = antistall::report_from_log(run);
    const std::vector<antistall::Violation> v = antistall::check_run(run, report);
    if (report_json) {
      json j;
      j["instance"] = run.instance;
      j["rule"] = run.rule;
      j["guided"] = run.guided;
      j["n"] = run.n;
      j["m"] = run.m;
      j["records"] = run.records.size();
      j["verdicts"] = report.verdict_string();
      json a = json::array();
      for (const auto& x : v) a.push_back({{"pivot", x.pivot}, {"claim", x.claim}, {"detail", x.detail}});
      j["violations"] = std::move(a);
      *report_json = dup(j.dump(2));
    }
    if (violations) *violations = static_cast<long>(v.size());
    return ASTALL_OK;
  });
}

astall_status astall_experiment(const char* config_json, char** result_json) {
  if (!config_json || !result_json) return fail(ASTALL_E_ARGUMENT, "null argument");
  return guarded([&] {
    const json cfg = json::parse(config_json);
    antistall::ExperimentConfig ec;
    std::vector<std::string> skipped;
    if (cfg.contains("dir")) {
      ec.instances = antistall::directory_instances(cfg["dir"].get<std::string>(), &skipped);
    } else if (cfg.contains("family")) {
      const std::string params = cfg.contains("params") ? cfg["params"].dump() : "";
      ec.instances = antistall::family_instances(cfg["family"].get<std::string>(), cfg.value("seed_lo", 1ULL),
                                                 cfg.value("seed_hi", 1ULL), params_from_json(params.c_str()));
    } else {
      return fail(ASTALL_E_ARGUMENT, "experiment needs 'dir' or 'family'");
    }
    if (!cfg.contains("rules") || !cfg["rules"].is_array() || cfg["rules"].empty()) {
      return fail(ASTALL_E_ARGUMENT, "experiment needs a non-empty 'rules' array");
    }
    for (const auto& r : cfg["rules"]) {
      const auto k = antistall::parse_rule(r.get<std::string>());
      if (!k) return fail(ASTALL_E_ARGUMENT, "unknown rule '" + r.get<std::string>() + "'");
      ec.rules.push_back(*k);
    }
    const auto nm = antistall::parse_numeric(cfg.value("numeric", "rational"));
    if (!nm) return fail(ASTALL_E_ARGUMENT, "unknown numeric mode");
    ec.base.numeric = *nm;
    ec.base.max_iterations = cfg.value("max_iterations", -1L);
    ec.base.timeout_seconds = cfg.value("timeout_seconds", 1800.0);
    if (cfg.contains("tolerance")) ec.base.tolerance = cfg["tolerance"].get<double>();
    if (cfg.contains("presolve_rule")) {
      const auto k = antistall::parse_rule(cfg["presolve_rule"].get<std::string>());
      if (!k) return fail(ASTALL_E_ARGUMENT, "unknown presolve rule");
      ec.base.presolve_rule = *k;
    }
    ec.workers = cfg.value("workers", 0U);

    const antistall::ExperimentResult r = antistall::run_experiment(ec);
    json out;
    out["csv"] = r.csv;
    out["summary_csv"] = r.summary_csv;
    out["runs"] = r.runs.size();
    out["violations"] = r.violation_count;
    json details = json::array();
    for (const auto& run : r.runs) {
      for (const auto& v : run.violations) {
        details.push_back(
            {{"instance", run.instance}, {"rule", run.rule}, {"pivot", v.pivot}, {"claim", v.claim}, {"detail", v.detail}});
      }
    }
    out["violation_details"] = std::move(details);
    out["skipped"] = skipped;
    *result_json = dup(out.dump());
    return ASTALL_OK;
  });
}

}  // extern "C"
