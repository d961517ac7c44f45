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

#ifndef UQREL_SCENARIO_HPP_
#define UQREL_SCENARIO_HPP_

#include <optional>
#include <string>

#include "json.hpp"
#include "uqrel/processes.hpp"
#include "uqrel/relations.hpp"

namespace uqrel {

/// A single hand-specified instance. Complex entries are [re, im] pairs,
/// matrices row major. `transfer_map`, when present, replaces the
/// instrument's induced channel wherever a channel is needed.
struct Scenario {
  int dim = 0;
  RelationMode mode = RelationMode::error_disturbance;
  Tolerances tol;
  std::optional<DensityOp> rho;
  std::optional<HermitianOp> a;
  std::optional<HermitianOp> b;
  std::optional<Instrument> instrument;
  std::optional<Povm> secondary;
  std::optional<TransferMap> transfer;
};

/// Parses and validates; error messages carry the offending field path
/// (for example "instrument[1][0]: expected a matrix row of [re, im] pairs").
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);

}  // namespace uqrel

#endif  // UQREL_SCENARIO_HPP_
