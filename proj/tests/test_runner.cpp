// Copyright 2026 The uqrel authors
//
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "uqrel/runner.hpp"
#include "uqrel/scenario.hpp"

using namespace uqrel;
using nlohmann::json;

namespace {

// Pauli-x sharp measurement at |0><0|, A = sigma_x, B = sigma_y.
const char* kSharpXCase = R"({
  "dim": 2,
  "mode": "error-disturbance",
  "rho": [[[1,0],[0,0]],[[0,0],[0,0]]],
  "observables": {
    "A": [[[0,0],[1,0]],[[1,0],[0,0]]],
    "B": [[[0,0],[0,-1]],[[0,1],[0,0]]]
  },
  "instrument": [
    [ [[[0.5,0],[0.5,0]],[[0.5,0],[0.5,0]]] ],
    [ [[[0.5,0],[-0.5,0]],[[-0.5,0],[0.5,0]]] ]
  ]
})";

std::string with_mode(const char* base, const std::string& mode) {
  json doc = json::parse(base);
  doc["mode"] = mode;
  return doc.dump();
}

}  // namespace

TEST_CASE("sweep config parses fields and rejects unknown keys") {
  SweepConfig def = parse_sweep_config("{}");
  CHECK(def.mode == RelationMode::error_disturbance);
  CHECK(def.dims == std::vector<int>{2});
  CHECK(def.trials == 100);

  SweepConfig cfg = parse_sweep_config(
      R"({"mode":"errors-joint","dims":[2,3],"trials":5,"seed":9,"tol":1e-7,"format":"json"})");
  CHECK(cfg.mode == RelationMode::errors_joint);
  CHECK(cfg.dims == std::vector<int>{2, 3});
  CHECK(cfg.trials == 5);
  CHECK(cfg.master_seed == 9);
  CHECK(cfg.tol.num == doctest::Approx(1e-7));
  CHECK(cfg.format == OutputFormat::json);

  CHECK_THROWS_AS(parse_sweep_config(R"({"bogus":1})"), ValidationError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"dims":[1]})"), ValidationError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"trials":0})"), ValidationError);
  CHECK_THROWS_AS(parse_sweep_config(R"({"mode":"bogus"})"), ValidationError);
  CHECK_THROWS_AS(parse_sweep_config("not json"), ValidationError);
}

TEST_CASE("verify sweeps pass in every mode and count rows") {
  for (const char* mode : {"errors-joint", "error-disturbance", "ozawa-chain",
                           "robertson", "properties"}) {
    CAPTURE(mode);
    SweepConfig cfg = parse_sweep_config(
        std::string(R"({"dims":[2,3],"trials":5,"seed":21,"mode":")") + mode +
        "\"}");
    RunResult r = run_verify(cfg);
    CHECK(r.exit_code == 0);
    json summary = json::parse(r.summary);
    CHECK(summary["rows"] == 10);
    CHECK(summary["violations"] == 0);
    // header + comment + 10 rows
    CHECK(std::count(r.body.begin(), r.body.end(), '\n') == 12);
  }
}

TEST_CASE("verify sweeps are byte deterministic") {
  SweepConfig cfg = parse_sweep_config(
      R"({"dims":[2],"trials":8,"seed":3,"mode":"errors-joint"})");
  RunResult a = run_verify(cfg);
  RunResult b = run_verify(cfg);
  CHECK(a.body == b.body);
  CHECK(a.summary == b.summary);

  SweepConfig other = cfg;
  other.master_seed = 4;
  CHECK(run_verify(other).body != a.body);
}

TEST_CASE("json sweep bodies parse and carry the same count") {
  SweepConfig cfg = parse_sweep_config(
      R"({"dims":[2],"trials":4,"seed":1,"format":"json"})");
  RunResult r = run_verify(cfg);
  json rows = json::parse(r.body);
  REQUIRE(rows.is_array());
  CHECK(rows.size() == 4);
  CHECK(rows[0].contains("eps_A"));
  CHECK(rows[0]["satisfied"].is_boolean());
}

TEST_CASE("compare sweeps run and stay ordered") {
  SweepConfig cfg = parse_sweep_config(R"({"dims":[2,3],"trials":5,"seed":2})");
  RunResult r = run_compare(cfg);
  CHECK(r.exit_code == 0);
  json summary = json::parse(r.summary);
  CHECK(summary["rows"] == 10);
  CHECK(summary["violations"] == 0);
  RunResult again = run_compare(cfg);
  CHECK(again.body == r.body);
}

TEST_CASE("all demos hit their closed-form references") {
  for (const char* name : {"luders-xy", "naive-violation", "schrodinger-equality",
                           "transpose-map"}) {
    CAPTURE(name);
    RunResult r = run_demo(name, OutputFormat::csv);
    CHECK(r.exit_code == 0);
    CHECK(r.body.find(",0\n") == std::string::npos);  // every line within
    RunResult rj = run_demo(name, OutputFormat::json);
    json rows = json::parse(rj.body);
    for (const auto& row : rows) CHECK(row["within"] == true);
  }
  CHECK_THROWS_AS(run_demo("bogus", OutputFormat::csv), ValidationError);
}

TEST_CASE("case runner handles the sharp-x scenario") {
  RunResult r = run_case(kSharpXCase, OutputFormat::json);
  CHECK(r.exit_code == 0);
  json row = json::parse(r.body);
  CHECK(row["satisfied"] == true);
  CHECK(row["eps_A"].get<double>() < 1e-7);
  CHECK(row["eta_or_eps_B"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("case runner covers the remaining modes") {
  json doc = json::parse(kSharpXCase);

  SUBCASE("errors-joint needs a secondary POVM") {
    doc["mode"] = "errors-joint";
    CHECK_THROWS_WITH_AS(run_case(doc.dump(), OutputFormat::csv),
                         doctest::Contains("secondary_povm"), ValidationError);
    doc["secondary_povm"] = {
        {"effects",
         {{{{1, 0}, {0, 0}}, {{0, 0}, {0, 0}}},
          {{{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}}}}};
    RunResult r = run_case(doc.dump(), OutputFormat::json);
    CHECK(r.exit_code == 0);
  }

  SUBCASE("ozawa-chain requires labels") {
    doc["mode"] = "ozawa-chain";
    CHECK_THROWS_WITH_AS(run_case(doc.dump(), OutputFormat::csv),
                         doctest::Contains("labels"), ValidationError);
    doc["labels"] = {1.0, -1.0};
    RunResult r = run_case(doc.dump(), OutputFormat::json);
    CHECK(r.exit_code == 0);
    json summary = json::parse(r.summary);
    CHECK(summary["detail"]["links"].size() == 5);
  }

  SUBCASE("robertson ignores the instrument") {
    doc["mode"] = "robertson";
    RunResult r = run_case(doc.dump(), OutputFormat::csv);
    CHECK(r.exit_code == 0);
  }

  SUBCASE("properties accepts a transfer map in place of the instrument") {
    doc["mode"] = "properties";
    doc.erase("instrument");
    doc["transfer_map"] = {
        {"dim_in", 2},
        {"dim_out", 2},
        {"coeffs",
         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}}};
    RunResult r = run_case(doc.dump(), OutputFormat::json);
    CHECK(r.exit_code == 0);
  }

  SUBCASE("errors-joint refuses a transfer override") {
    doc["mode"] = "errors-joint";
    doc["secondary_povm"] = {
        {"effects",
         {{{{1, 0}, {0, 0}}, {{0, 0}, {0, 0}}},
          {{{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}}}}};
    doc["transfer_map"] = {
        {"dim_in", 2},
        {"dim_out", 2},
        {"coeffs",
         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}}};
    CHECK_THROWS_WITH_AS(run_case(doc.dump(), OutputFormat::csv),
                         doctest::Contains("transfer_map"), ValidationError);
  }
}

TEST_CASE("scenario parser reports the failing path") {
  CHECK_THROWS_WITH_AS(run_case("{}", OutputFormat::csv),
                       doctest::Contains("dim"), ValidationError);
  CHECK_THROWS_AS(run_case("definitely not json", OutputFormat::csv),
                  ValidationError);

  json doc = json::parse(kSharpXCase);
  doc["surprise"] = 1;
  CHECK_THROWS_WITH_AS(run_case(doc.dump(), OutputFormat::csv),
                       doctest::Contains("surprise"), ValidationError);

  doc = json::parse(kSharpXCase);
  doc["rho"][0][0] = {2, 0};  // trace 2
  CHECK_THROWS_WITH_AS(run_case(doc.dump(), OutputFormat::csv),
                       doctest::Contains("rho"), ValidationError);

  doc = json::parse(kSharpXCase);
  doc["observables"]["A"][0][1] = "x";
  CHECK_THROWS_WITH_AS(run_case(doc.dump(), OutputFormat::csv),
                       doctest::Contains("observables.A"), ValidationError);
}

TEST_CASE("transfer override on error-disturbance mode stays honest") {
  json doc = json::parse(kSharpXCase);
  // identity coordinates: no disturbance, relation trivially satisfied
  doc["transfer_map"] = {
      {"dim_in", 2},
      {"dim_out", 2},
      {"coeffs", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};
  RunResult r = run_case(doc.dump(), OutputFormat::json);
  json row = json::parse(r.body);
  CHECK(row["eta_or_eps_B"].get<double>() < 1e-7);
  json summary = json::parse(r.summary);
  CHECK(summary["detail"]["transfer_override"] == true);
}
