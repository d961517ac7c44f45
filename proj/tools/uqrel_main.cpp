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

// Command line front end. Talks to the library only through the C API so
// that it exercises the same surface as any other client.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uqrel/uqrel.h"

namespace {

using nlohmann::json;

struct ReportDeleter {
  void operator()(uqrel_report* r) const { uqrel_report_free(r); }
};
using ReportPtr = std::unique_ptr<uqrel_report, ReportDeleter>;

struct SweepOptions {
  std::string mode = "error-disturbance";
  std::vector<int> dims{2};
  int trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string format = "csv";
  std::string out_path;
};

void add_sweep_flags(CLI::App* cmd, SweepOptions& opt, bool with_mode) {
  if (with_mode) {
    cmd->add_option("--mode", opt.mode,
                    "Relation family: errors-joint, error-disturbance, "
                    "ozawa-chain, robertson, properties")
        ->capture_default_str();
  }
  cmd->add_option("--dim", opt.dims, "Hilbert space dimensions to sweep")
      ->capture_default_str();
  cmd->add_option("--trials", opt.trials, "Random trials per dimension")
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "Master seed for the trial streams")
      ->capture_default_str();
  cmd->add_option("--tol", opt.tol, "Slack tolerance for the checks")
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "Row output format: csv or json")
      ->capture_default_str();
  cmd->add_option("--out", opt.out_path,
                  "Write rows to this file (summary then goes to stdout)");
}

std::string sweep_config_json(const SweepOptions& opt, bool with_mode) {
  json cfg{{"dims", opt.dims},   {"trials", opt.trials}, {"seed", opt.seed},
           {"tol", opt.tol},     {"format", opt.format}};
  if (with_mode) cfg["mode"] = opt.mode;
  return cfg.dump();
}

// Routes the report: with --out, rows land in the file and the summary on
// stdout; otherwise rows go to stdout and the summary to stderr.
int emit(const uqrel_report* report, const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return UQREL_ERR_CONFIG;
    }
    out << uqrel_report_body(report);
    if (!out.good()) {
      std::cerr << "error: short write to '" << out_path << "'\n";
      return UQREL_ERR_CONFIG;
    }
    std::cout << uqrel_report_summary(report);
  } else {
    std::cout << uqrel_report_body(report);
    std::cerr << uqrel_report_summary(report);
  }
  return uqrel_report_exit_code(report);
}

int finish(uqrel_status status, ReportPtr report, const std::string& out_path) {
  if (status != UQREL_OK) {
    std::cerr << "error: " << uqrel_last_error() << "\n";
    return static_cast<int>(status);
  }
  return emit(report.get(), out_path);
}

int run_verify_cmd(const SweepOptions& opt) {
  uqrel_report* raw = nullptr;
  uqrel_status st = uqrel_run_verify(sweep_config_json(opt, true).c_str(), &raw);
  return finish(st, ReportPtr(raw), opt.out_path);
}

int run_compare_cmd(const SweepOptions& opt) {
  uqrel_report* raw = nullptr;
  uqrel_status st = uqrel_run_compare(sweep_config_json(opt, false).c_str(), &raw);
  return finish(st, ReportPtr(raw), opt.out_path);
}

int run_demo_cmd(const std::string& name, const std::string& format,
                 const std::string& out_path) {
  uqrel_report* raw = nullptr;
  uqrel_status st = uqrel_run_demo(name.c_str(), format.c_str(), &raw);
  return finish(st, ReportPtr(raw), out_path);
}

int run_case_cmd(const std::string& path, const std::string& format,
                 const std::string& out_path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read scenario file '" << path << "'\n";
      return UQREL_ERR_CONFIG;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  uqrel_report* raw = nullptr;
  uqrel_status st = uqrel_run_case(text.c_str(), format.c_str(), &raw);
  return finish(st, ReportPtr(raw), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("uqrel ") + uqrel_version() +
               ": error and disturbance relation checks for quantum "
               "measurements"};
  app.require_subcommand(1);

  SweepOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check a relation family on random instances");
  add_sweep_flags(verify, verify_opt, true);

  SweepOptions compare_opt;
  CLI::App* compare = app.add_subcommand(
      "compare", "Compare moment-based and distance-based quantities");
  add_sweep_flags(compare, compare_opt, false);

  std::string demo_name;
  std::string demo_format = "csv";
  std::string demo_out;
  CLI::App* demo = app.add_subcommand("demo", "Run a closed-form worked example");
  demo->add_option("name", demo_name,
                   "luders-xy, naive-violation, schrodinger-equality, or "
                   "transpose-map")
      ->required();
  demo->add_option("--format", demo_format, "csv or json")->capture_default_str();
  demo->add_option("--out", demo_out, "Write rows to this file");

  std::string case_path;
  std::string case_format = "csv";
  std::string case_out;
  CLI::App* case_cmd =
      app.add_subcommand("case", "Evaluate one fully specified scenario");
  case_cmd->add_option("scenario", case_path, "Scenario JSON file, or - for stdin")
      ->required();
  case_cmd->add_option("--format", case_format, "csv or json")
      ->capture_default_str();
  case_cmd->add_option("--out", case_out, "Write rows to this file");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) return run_verify_cmd(verify_opt);
  if (compare->parsed()) return run_compare_cmd(compare_opt);
  if (demo->parsed()) return run_demo_cmd(demo_name, demo_format, demo_out);
  if (case_cmd->parsed()) return run_case_cmd(case_path, case_format, case_out);
  return UQREL_ERR_CONFIG;
}
