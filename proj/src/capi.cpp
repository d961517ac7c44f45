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

#include "uqrel/uqrel.h"

#include <new>
#include <string>

#include "uqrel/runner.hpp"

struct uqrel_report {
  std::string body;
  std::string summary;
  int exit_code = 0;
};

namespace {

thread_local std::string g_last_error;

uqrel_status fail(uqrel_status code, const char* what) {
  g_last_error = what != nullptr ? what : "unknown error";
  return code;
}

// Runs fn(), stores its RunResult into *out, and maps exceptions onto the
// status enum. UQREL_OK means the computation finished; a violating sweep
// still returns UQREL_OK with report exit code 2.
template <typename Fn>
uqrel_status run_guarded(uqrel_report** out, Fn&& fn) {
  if (out == nullptr) return fail(UQREL_ERR_CONFIG, "out_report is NULL");
  *out = nullptr;
  try {
    uqrel::RunResult result = fn();
    auto* report = new uqrel_report;
    report->body = std::move(result.body);
    report->summary = std::move(result.summary);
    report->exit_code = result.exit_code;
    *out = report;
    g_last_error.clear();
    return UQREL_OK;
  } catch (const uqrel::NumericalError& e) {
    return fail(UQREL_ERR_NUMERICAL, e.what());
  } catch (const uqrel::ValidationError& e) {
    return fail(UQREL_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UQREL_ERR_NUMERICAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UQREL_ERR_CONFIG, e.what());
  }
}

uqrel_status parse_format_guarded(const char* format, uqrel::OutputFormat* out) {
  if (format == nullptr) {
    *out = uqrel::OutputFormat::csv;
    return UQREL_OK;
  }
  try {
    *out = uqrel::parse_format(format);
    return UQREL_OK;
  } catch (const uqrel::ValidationError& e) {
    return fail(UQREL_ERR_CONFIG, e.what());
  }
}

}  // namespace

extern "C" {

const char* uqrel_version(void) { return "0.1.0"; }

const char* uqrel_last_error(void) { return g_last_error.c_str(); }

uqrel_status uqrel_run_verify(const char* config_json, uqrel_report** out_report) {
  return run_guarded(out_report, [&] {
    uqrel::SweepConfig cfg =
        uqrel::parse_sweep_config(config_json != nullptr ? config_json : "{}");
    return uqrel::run_verify(cfg);
  });
}

uqrel_status uqrel_run_compare(const char* config_json, uqrel_report** out_report) {
  return run_guarded(out_report, [&] {
    uqrel::SweepConfig cfg =
        uqrel::parse_sweep_config(config_json != nullptr ? config_json : "{}");
    return uqrel::run_compare(cfg);
  });
}

uqrel_status uqrel_run_demo(const char* name, const char* format,
                            uqrel_report** out_report) {
  if (name == nullptr) return fail(UQREL_ERR_CONFIG, "demo name is NULL");
  uqrel::OutputFormat fmt;
  uqrel_status st = parse_format_guarded(format, &fmt);
  if (st != UQREL_OK) return st;
  return run_guarded(out_report, [&] { return uqrel::run_demo(name, fmt); });
}

uqrel_status uqrel_run_case(const char* scenario_json, const char* format,
                            uqrel_report** out_report) {
  if (scenario_json == nullptr) {
    return fail(UQREL_ERR_CONFIG, "scenario_json is NULL");
  }
  uqrel::OutputFormat fmt;
  uqrel_status st = parse_format_guarded(format, &fmt);
  if (st != UQREL_OK) return st;
  return run_guarded(out_report, [&] { return uqrel::run_case(scenario_json, fmt); });
}

const char* uqrel_report_body(const uqrel_report* report) {
  return report != nullptr ? report->body.c_str() : "";
}

const char* uqrel_report_summary(const uqrel_report* report) {
  return report != nullptr ? report->summary.c_str() : "";
}

int uqrel_report_exit_code(const uqrel_report* report) {
  return report != nullptr ? report->exit_code : UQREL_ERR_CONFIG;
}

void uqrel_report_free(uqrel_report* report) { delete report; }

}  // extern "C"
