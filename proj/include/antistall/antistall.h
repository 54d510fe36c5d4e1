/* Copyright 2026 The Antistall Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the antistall simplex library.
 *
 * Handles are opaque. Every function returning astall_status leaves a
 * message for astall_last_error() on failure (per thread). Strings handed
 * out through char** are owned by the caller and released with
 * astall_string_free(). Output pointers are left untouched on failure.
 */

#ifndef ANTISTALL_ANTISTALL_H_
#define ANTISTALL_ANTISTALL_H_

#include <stddef.h>

#if defined(_WIN32)
#define ASTALL_API __declspec(dllexport)
#else
#define ASTALL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum astall_status {
  ASTALL_OK = 0,
  ASTALL_E_ARGUMENT = 1, /* null pointer, unknown rule, bad option */
  ASTALL_E_PARSE = 2,    /* malformed MPS, JSON or log text */
  ASTALL_E_MODEL = 3,    /* model rejected (free variables, bad dimensions) */
  ASTALL_E_IO = 4,       /* file could not be read */
  ASTALL_E_SETUP = 5,    /* run could not start (guide file, initial basis, oracle cap) */
  ASTALL_E_INTERNAL = 6
} astall_status;

typedef struct astall_model astall_model;
typedef struct astall_run astall_run;

ASTALL_API const char* astall_version(void);
ASTALL_API const char* astall_status_string(astall_status s);
/* Message of the last failing call on this thread; "" if none. */
ASTALL_API const char* astall_last_error(void);
ASTALL_API void astall_string_free(char* s);

/* Models. */
ASTALL_API astall_status astall_model_from_mps(const char* text, astall_model** out);
ASTALL_API astall_status astall_model_read_mps(const char* path, astall_model** out);
/* params_json: object of string or number values, e.g. {"d":3,"seed":1}.
 * sidecar_json (optional) receives family, seed, params and known optimum. */
ASTALL_API astall_status astall_model_generate(const char* family, const char* params_json, astall_model** out,
                                               char** sidecar_json);
ASTALL_API astall_status astall_model_to_mps(const astall_model* model, char** out);
/* General-form rows and columns. */
ASTALL_API astall_status astall_model_dims(const astall_model* model, int* rows, int* cols);
/* Warnings from the MPS reader as a JSON array of {"line","message"}. */
ASTALL_API astall_status astall_model_warnings_json(const astall_model* model, char** out);
ASTALL_API void astall_model_free(astall_model* model);

/* Runs. */
typedef struct astall_solve_options {
  const char* rule;          /* dantzig, bland, lifo, most_frequent, steepest_edge, antistalling */
  const char* guide;         /* "optimal" or "file:PATH" (antistalling only) */
  const char* presolve_rule; /* rule computing x* for the optimal guide */
  const char* numeric;       /* "rational" or "float" */
  long max_iterations;       /* -1: 10 (n + m)^2 */
  double tolerance;          /* float zero threshold; <= 0 keeps the default */
  double timeout_seconds;    /* <= 0: none */
  int detail_log;            /* -1 auto, 0 off, 1 on */
  const int* initial_basis;  /* standard-form columns, or NULL for phase one */
  int initial_basis_size;
  int oracle_max_n;          /* enumerate bases for Delta/delta when n <= this */
} astall_solve_options;

ASTALL_API void astall_solve_options_init(astall_solve_options* options);
/* options may be NULL for the defaults. */
ASTALL_API astall_status astall_solve(const astall_model* model, const char* instance, const astall_solve_options* options,
                                      astall_run** out);
ASTALL_API void astall_run_free(astall_run* run);

/* "Optimal", "Unbounded", "Infeasible", "IterationLimit", "Cycled", "TimeLimit". */
ASTALL_API const char* astall_run_status(const astall_run* run);
ASTALL_API long astall_run_pivots(const astall_run* run);
ASTALL_API long astall_run_degenerate_pivots(const astall_run* run);
ASTALL_API long astall_run_max_consecutive_degenerate(const astall_run* run);
ASTALL_API long astall_run_distinct_vertices(const astall_run* run);
ASTALL_API long astall_run_violation_count(const astall_run* run);
/* Objective of the original problem as text ("" unless Optimal). */
ASTALL_API astall_status astall_run_objective(const astall_run* run, char** out);
ASTALL_API astall_status astall_run_log_jsonl(const astall_run* run, char** out);
ASTALL_API astall_status astall_run_report_json(const astall_run* run, char** out);
ASTALL_API astall_status astall_run_csv_row(const astall_run* run, char** out);

/* Basis enumeration summary as JSON. Fails with ASTALL_E_SETUP when
 * C(n, m) exceeds `cap`. */
ASTALL_API astall_status astall_oracle_json(const astall_model* model, long long cap, char** out);

/* Re-checks a JSON-lines run log; report_json lists violations and bound
 * verdicts. */
ASTALL_API astall_status astall_check_log(const char* log_jsonl, char** report_json, long* violations);

/* config_json keys: "dir" or "family" (+ "seed_lo", "seed_hi", "params"),
 * "rules" (array), "numeric", "max_iterations", "timeout_seconds",
 * "workers", "presolve_rule". result_json has "csv", "summary_csv",
 * "violations" (count), "violation_details" and "skipped". */
ASTALL_API astall_status astall_experiment(const char* config_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* ANTISTALL_ANTISTALL_H_ */
