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
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "uqrel/uqrel.h"

using nlohmann::json;

TEST_CASE("version is a dotted triple") {
  std::string v = uqrel_version();
  CHECK(std::count(v.begin(), v.end(), '.') == 2);
}

TEST_CASE("verify runs through the C surface") {
  uqrel_report* rep = nullptr;
  uqrel_status st = uqrel_run_verify(
      R"({"dims":[2],"trials":4,"seed":11,"mode":"errors-joint"})", &rep);
  REQUIRE(st == UQREL_OK);
  REQUIRE(rep != nullptr);
  CHECK(uqrel_report_exit_code(rep) == 0);
  CHECK(std::strlen(uqrel_report_body(rep)) > 0);
  json summary = json::parse(uqrel_report_summary(rep));
  CHECK(summary["rows"] == 4);
  CHECK(std::strlen(uqrel_last_error()) == 0);
  uqrel_report_free(rep);
}

TEST_CASE("compare runs through the C surface") {
  uqrel_report* rep = nullptr;
  REQUIRE(uqrel_run_compare(R"({"dims":[2],"trials":3,"seed":5})", &rep) ==
          UQREL_OK);
  json summary = json::parse(uqrel_report_summary(rep));
  CHECK(summary["command"] == "compare");
  uqrel_report_free(rep);
}

TEST_CASE("config errors map to the config status with a message") {
  uqrel_report* rep = nullptr;
  CHECK(uqrel_run_verify("{bad", &rep) == UQREL_ERR_CONFIG);
  CHECK(rep == nullptr);
  CHECK(std::strlen(uqrel_last_error()) > 0);
  CHECK(uqrel_run_verify(R"({"trials":-1})", &rep) == UQREL_ERR_CONFIG);
  CHECK(uqrel_run_demo("bogus", "csv", &rep) == UQREL_ERR_CONFIG);
  CHECK(uqrel_run_demo("luders-xy", "yaml", &rep) == UQREL_ERR_CONFIG);
  CHECK(uqrel_run_case("{}", "csv", &rep) == UQREL_ERR_CONFIG);
  CHECK(uqrel_run_case(nullptr, "csv", &rep) == UQREL_ERR_CONFIG);
  CHECK(uqrel_run_verify("{}", nullptr) == UQREL_ERR_CONFIG);
}

TEST_CASE("demos emit bodies through the C surface") {
  uqrel_report* rep = nullptr;
  REQUIRE(uqrel_run_demo("transpose-map", "json", &rep) == UQREL_OK);
  json rows = json::parse(uqrel_report_body(rep));
  CHECK(rows.is_array());
  CHECK(uqrel_report_exit_code(rep) == 0);
  uqrel_report_free(rep);
  // default format is CSV
  REQUIRE(uqrel_run_demo("luders-xy", nullptr, &rep) == UQREL_OK);
  CHECK(std::string(uqrel_report_body(rep)).rfind("# uqrel-demo", 0) == 0);
  uqrel_report_free(rep);
}

TEST_CASE("case runs through the C surface") {
  const char* scenario = R"({
    "dim": 2,
    "mode": "robertson",
    "rho": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]],
    "observables": {
      "A": [[[0,0],[1,0]],[[1,0],[0,0]]],
      "B": [[[1,0],[0,0]],[[0,0],[-1,0]]]
    }
  })";
  uqrel_report* rep = nullptr;
  REQUIRE(uqrel_run_case(scenario, "json", &rep) == UQREL_OK);
  CHECK(uqrel_report_exit_code(rep) == 0);
  uqrel_report_free(rep);
}

TEST_CASE("accessors tolerate null reports") {
  CHECK(std::strlen(uqrel_report_body(nullptr)) == 0);
  CHECK(std::strlen(uqrel_report_summary(nullptr)) == 0);
  CHECK(uqrel_report_exit_code(nullptr) == UQREL_ERR_CONFIG);
  uqrel_report_free(nullptr);  // must be a no-op
}
