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

#include "uqrel/report.hpp"

#include <algorithm>
#include <cstdio>

namespace uqrel {

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ValidationError("unknown format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string report_csv_header() {
  return "# uqrel-report v1\n"
         "seed,dim,mode,eps_A,eta_or_eps_B,lhs,R,I,bound_full,bound_simple,"
         "slack,satisfied\n";
}

std::string report_csv_row(const RelationReport& r, bool satisfied) {
  std::string row;
  row += std::to_string(r.seed);
  row += ',';
  row += std::to_string(r.dim);
  row += ',';
  row += to_string(r.mode);
  for (double v : {r.eps_a, r.eta_or_eps_b, r.lhs, r.bounds.correlation,
                   r.bounds.commutation, r.bounds.full, r.bounds.simple, r.slack}) {
    row += ',';
    row += format_double(v);
  }
  row += satisfied ? ",1\n" : ",0\n";
  return row;
}

nlohmann::json report_json(const RelationReport& r, bool satisfied) {
  return nlohmann::json{{"seed", r.seed},
                        {"dim", r.dim},
                        {"mode", to_string(r.mode)},
                        {"eps_A", r.eps_a},
                        {"eta_or_eps_B", r.eta_or_eps_b},
                        {"lhs", r.lhs},
                        {"R", r.bounds.correlation},
                        {"I", r.bounds.commutation},
                        {"bound_full", r.bounds.full},
                        {"bound_simple", r.bounds.simple},
                        {"slack", r.slack},
                        {"satisfied", satisfied}};
}

std::string compare_csv_header() {
  return "# uqrel-compare v1\n"
         "seed,dim,eps_moment,eta_moment,eps,eta,bound_full,bound_simple,"
         "additive_rhs,min_slack,tightest,all_hold\n";
}

namespace {

const ChainLink& tightest_link(const OzawaChainReport& r) {
  return *std::min_element(
      r.links.begin(), r.links.end(),
      [](const ChainLink& a, const ChainLink& b) { return a.slack < b.slack; });
}

}  // namespace

std::string compare_csv_row(std::uint64_t seed, int dim, const OzawaChainReport& r,
                            double slack_tol) {
  const ChainLink& t = tightest_link(r);
  std::string row;
  row += std::to_string(seed);
  row += ',';
  row += std::to_string(dim);
  for (double v : {r.eps_moment, r.eta_moment, r.eps, r.eta, r.bounds.full,
                   r.bounds.simple, r.additive_rhs, t.slack}) {
    row += ',';
    row += format_double(v);
  }
  row += ',';
  row += t.name;
  row += r.all_hold(slack_tol) ? ",1\n" : ",0\n";
  return row;
}

nlohmann::json compare_json(std::uint64_t seed, int dim, const OzawaChainReport& r,
                            double slack_tol) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : r.links) {
    links.push_back({{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs},
                     {"slack", l.slack}});
  }
  const ChainLink& t = tightest_link(r);
  return nlohmann::json{{"seed", seed},
                        {"dim", dim},
                        {"eps_moment", r.eps_moment},
                        {"eta_moment", r.eta_moment},
                        {"eps", r.eps},
                        {"eta", r.eta},
                        {"bound_full", r.bounds.full},
                        {"bound_simple", r.bounds.simple},
                        {"additive_rhs", r.additive_rhs},
                        {"links", links},
                        {"tightest", t.name},
                        {"all_hold", r.all_hold(slack_tol)}};
}

}  // namespace uqrel
