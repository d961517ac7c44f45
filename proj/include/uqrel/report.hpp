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

#ifndef UQREL_REPORT_HPP_
#define UQREL_REPORT_HPP_

#include <string>

#include "json.hpp"
#include "uqrel/relations.hpp"

namespace uqrel {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

/// Shortest text that round-trips a double exactly ("%.17g").
std::string format_double(double v);

/// Header comment + column line for relation sweeps. Byte-stable.
std::string report_csv_header();

/// One row: seed,dim,mode,eps_A,eta_or_eps_B,lhs,R,I,bound_full,bound_simple,
/// slack,satisfied. `satisfied` is the bound the row's mode asserts.
std::string report_csv_row(const RelationReport& r, bool satisfied);

nlohmann::json report_json(const RelationReport& r, bool satisfied);

/// Header + row for moment-vs-seminorm comparison sweeps.
std::string compare_csv_header();
std::string compare_csv_row(std::uint64_t seed, int dim, const OzawaChainReport& r,
                            double slack_tol);
nlohmann::json compare_json(std::uint64_t seed, int dim, const OzawaChainReport& r,
                            double slack_tol);

}  // namespace uqrel

#endif  // UQREL_REPORT_HPP_
