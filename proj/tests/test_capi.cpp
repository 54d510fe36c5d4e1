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

// Uses the shared library through its public header only.

#include <gtest/gtest.h>

#include <string>

#include "antistall/antistall.h"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string take(char* s) {
  std::string out = s ? s : "";
  astall_string_free(s);
  return out;
}

struct Model {
  astall_model* p = nullptr;
  ~Model() { astall_model_free(p); }
};

struct RunHandle {
  astall_run* p = nullptr;
  ~RunHandle() { astall_run_free(p); }
};

const char* kLpB =
    "NAME lp_b\nROWS\n N obj\n L r1\n L r2\n L r3\nCOLUMNS\n x1 r1 1 r2 1\n x1 r3 1\n"
    " x2 obj -1 r2 1\n x2 r3 -1\nRHS\n rhs r1 1 r2 2\n rhs r3 1\nENDATA\n";

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(astall_version(), "1.0.0");
  EXPECT_STREQ(astall_status_string(ASTALL_OK), "ok");
  EXPECT_NE(std::string(astall_status_string(ASTALL_E_PARSE)), "ok");
}

TEST(CApi, SolveFromMpsText) {
  Model m;
  ASSERT_EQ(astall_model_from_mps(kLpB, &m.p), ASTALL_OK);
  int rows = 0, cols = 0;
  ASSERT_EQ(astall_model_dims(m.p, &rows, &cols), ASTALL_OK);
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(cols, 2);

  astall_solve_options opt;
  astall_solve_options_init(&opt);
  EXPECT_STREQ(opt.rule, "antistalling");
  RunHandle r;
  ASSERT_EQ(astall_solve(m.p, "lp_b", &opt, &r.p), ASTALL_OK) << astall_last_error();
  EXPECT_STREQ(astall_run_status(r.p), "Optimal");
  EXPECT_EQ(astall_run_violation_count(r.p), 0);
  char* obj = nullptr;
  ASSERT_EQ(astall_run_objective(r.p, &obj), ASTALL_OK);
  EXPECT_EQ(take(obj), "-2");

  char* report = nullptr;
  ASSERT_EQ(astall_run_report_json(r.p, &report), ASTALL_OK);
  const json rep = json::parse(take(report));
  EXPECT_EQ(rep["status"], "Optimal");

  char* log = nullptr;
  ASSERT_EQ(astall_run_log_jsonl(r.p, &log), ASTALL_OK);
  const std::string log_text = take(log);
  char* checked = nullptr;
  long violations = -1;
  ASSERT_EQ(astall_check_log(log_text.c_str(), &checked, &violations), ASTALL_OK);
  EXPECT_EQ(violations, 0);
  take(checked);

  char* row = nullptr;
  ASSERT_EQ(astall_run_csv_row(r.p, &row), ASTALL_OK);
  EXPECT_EQ(take(row).rfind("lp_b,5,3,antistalling,Optimal,", 0), 0u);
}

TEST(CApi, EveryRuleAndFloatMode) {
  Model m;
  ASSERT_EQ(astall_model_generate("klee_minty", "{\"d\":3}", &m.p, nullptr), ASTALL_OK);
  for (const char* rule : {"dantzig", "bland", "lifo", "most_frequent", "steepest_edge", "antistalling"}) {
    for (const char* num : {"rational", "float"}) {
      astall_solve_options opt;
      astall_solve_options_init(&opt);
      opt.rule = rule;
      opt.numeric = num;
      RunHandle r;
      ASSERT_EQ(astall_solve(m.p, "km3", &opt, &r.p), ASTALL_OK) << rule << " " << astall_last_error();
      EXPECT_STREQ(astall_run_status(r.p), "Optimal") << rule;
      char* obj = nullptr;
      astall_run_objective(r.p, &obj);
      EXPECT_DOUBLE_EQ(std::stod(take(obj)), 10000.0) << rule;
    }
  }
}

TEST(CApi, GenerateSidecarAndMpsRoundTrip) {
  Model m;
  char* sidecar = nullptr;
  ASSERT_EQ(astall_model_generate("degenerate_pyramid", "{\"d\":4,\"seed\":\"2\"}", &m.p, &sidecar), ASTALL_OK);
  const json side = json::parse(take(sidecar));
  EXPECT_EQ(side["family"], "degenerate_pyramid");
  char* text = nullptr;
  ASSERT_EQ(astall_model_to_mps(m.p, &text), ASTALL_OK);
  const std::string mps = take(text);
  Model back;
  ASSERT_EQ(astall_model_from_mps(mps.c_str(), &back.p), ASTALL_OK);
  char* again = nullptr;
  ASSERT_EQ(astall_model_to_mps(back.p, &again), ASTALL_OK);
  EXPECT_EQ(take(again), mps);
}

TEST(CApi, OracleJson) {
  Model m;
  ASSERT_EQ(astall_model_from_mps(kLpB, &m.p), ASTALL_OK);
  char* out = nullptr;
  ASSERT_EQ(astall_oracle_json(m.p, 1000, &out), ASTALL_OK);
  const json o = json::parse(take(out));
  EXPECT_EQ(o["subsets"], 10);
  EXPECT_EQ(o["nonsingular_bases"], 9);
  EXPECT_EQ(o["feasible_bases"], 6);
  EXPECT_EQ(o["degenerate_feasible_bases"], 3);
  EXPECT_EQ(o["vertices"], 4);
  EXPECT_EQ(o["delta_max"], "3");
  EXPECT_EQ(o["delta_min"], "1");
  EXPECT_EQ(astall_oracle_json(m.p, 5, &out), ASTALL_E_SETUP);
}

TEST(CApi, ErrorCodesAndLastError) {
  astall_model* m = nullptr;
  EXPECT_EQ(astall_model_from_mps(nullptr, &m), ASTALL_E_ARGUMENT);
  EXPECT_EQ(astall_model_from_mps("NAME x\nROWS\n N z\n L c\nCOLUMNS\n x z 1 c q\n", &m), ASTALL_E_PARSE);
  EXPECT_NE(std::string(astall_last_error()).find("line"), std::string::npos);
  EXPECT_EQ(m, nullptr);
  EXPECT_EQ(astall_model_read_mps("/nonexistent/file.mps", &m), ASTALL_E_IO);
  EXPECT_EQ(astall_model_generate("nope", "{}", &m, nullptr), ASTALL_E_ARGUMENT);
  EXPECT_EQ(astall_model_generate("klee_minty", "{bad", &m, nullptr), ASTALL_E_PARSE);

  ASSERT_EQ(astall_model_from_mps("NAME x\nROWS\n N z\n L c\nCOLUMNS\n x z 1 c 1\nBOUNDS\n MI b x\nENDATA\n", &m),
            ASTALL_OK);
  astall_solve_options opt;
  astall_solve_options_init(&opt);
  astall_run* r = nullptr;
  EXPECT_EQ(astall_solve(m, "free", &opt, &r), ASTALL_E_MODEL);
  opt.rule = "random";
  EXPECT_EQ(astall_solve(m, "free", &opt, &r), ASTALL_E_ARGUMENT);
  EXPECT_EQ(astall_solve(m, "free", nullptr, &r), ASTALL_E_MODEL);  // NULL options: defaults
  EXPECT_EQ(astall_solve(nullptr, "free", nullptr, &r), ASTALL_E_ARGUMENT);
  astall_model_free(m);

  Model b;
  ASSERT_EQ(astall_model_from_mps(kLpB, &b.p), ASTALL_OK);
  astall_solve_options_init(&opt);
  const int bad_basis[3] = {0, 1, 2};  // x1 = 3/2 > 1
  opt.initial_basis = bad_basis;
  opt.initial_basis_size = 3;
  EXPECT_EQ(astall_solve(b.p, "lp_b", &opt, &r), ASTALL_E_SETUP);
  opt.initial_basis = nullptr;
  opt.guide = "file:/nonexistent/guide.json";
  EXPECT_EQ(astall_solve(b.p, "lp_b", &opt, &r), ASTALL_E_SETUP);

  char* rep = nullptr;
  long v = 0;
  EXPECT_EQ(astall_check_log("{\"kind\":\"run\"\n", &rep, &v), ASTALL_E_PARSE);
  EXPECT_EQ(astall_run_pivots(nullptr), -1);
  astall_model_free(nullptr);
  astall_run_free(nullptr);
  astall_string_free(nullptr);
}

TEST(CApi, Experiment) {
  char* out = nullptr;
  const char* cfg =
      R"({"family":"degenerate_pyramid","seed_lo":1,"seed_hi":2,"params":{"d":3},)"
      R"("rules":["dantzig","antistalling"],"workers":1})";
  ASSERT_EQ(astall_experiment(cfg, &out), ASTALL_OK) << astall_last_error();
  const json res = json::parse(take(out));
  EXPECT_EQ(res["runs"], 4);
  EXPECT_EQ(res["violations"], 0);
  const std::string summary = res["summary_csv"];
  EXPECT_EQ(summary.rfind("rule,runs,optimal,mean,median,q25,q75\ndantzig,2,2,", 0), 0u) << summary;
  EXPECT_EQ(astall_experiment(R"({"family":"klee_minty"})", &out), ASTALL_E_ARGUMENT);
}

}  // namespace
