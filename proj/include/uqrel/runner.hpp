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

#ifndef UQREL_RUNNER_HPP_
#define UQREL_RUNNER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "uqrel/report.hpp"
#include "uqrel/sampling.hpp"

namespace uqrel {

/// Randomized sweep parameters. `trials` applies per entry of `dims`.
struct SweepConfig {
  RelationMode mode = RelationMode::error_disturbance;
  std::vector<int> dims = {2};
  int trials = 100;
  std::uint64_t master_seed = 0;
  Tolerances tol;
  OutputFormat format = OutputFormat::csv;
};

/// Parses {"mode": ..., "dims": [...], "trials": ..., "seed": ...,
/// "tol": ..., "format": ...}; all fields optional except none. Unknown
/// fields are rejected.
SweepConfig parse_sweep_config(const std::string& json_text);

/// Outcome of a run. `body` is the row stream (CSV or JSON), `summary` a
/// small JSON object, `exit_code` one of 0 (all good), 2 (some relation
/// violated). Breakdown and config problems surface as exceptions instead.
struct RunResult {
  std::string body;
  std::string summary;
  int exit_code = 0;
};

/// Random sweep of the configured relation mode. Trials are deterministic
/// functions of (master_seed, trial index) regardless of thread schedule.
RunResult run_verify(const SweepConfig& cfg);

/// Moment-based vs seminorm-based figures on random labeled instruments,
/// with the full inequality chain per trial.
RunResult run_compare(const SweepConfig& cfg);

/// Named worked examples with closed-form reference values:
/// luders-xy, naive-violation, schrodinger-equality, transpose-map.
RunResult run_demo(const std::string& name, OutputFormat format,
                   const Tolerances& tol = Tolerances{});

/// One hand-specified instance from a scenario document.
RunResult run_case(const std::string& scenario_json, OutputFormat format);

}  // namespace uqrel

#endif  // UQREL_RUNNER_HPP_
