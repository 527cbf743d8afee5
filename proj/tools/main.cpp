/*
 * Copyright (c) 2026, the softval authors.
 *
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
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softval/evaluate.hpp"
#include "softval/parallel.hpp"
#include "softval/version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_compute_error = 3;

bool is_input_error(softval::ErrorKind kind) {
  using K = softval::ErrorKind;
  switch (kind) {
    case K::parse_error:
    case K::schema_error:
    case K::out_of_range:
    case K::row_sum_violation:
    case K::shape_error:
    case K::shape_mismatch:
    case K::class_name_mismatch:
    case K::unknown_class:
    case K::domain_error:
    case K::io_error:  // unreadable/unwritable paths are usage errors
      return true;
    default:
      return false;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty() || s == "none") return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

struct EvalArgs {
  std::string input;
  std::string format;  // empty = infer from extension
  std::string world = "closed";
  std::string operators = "strong,product,weak";
  std::string measures = "sens,spec,ppv,npv";
  std::string regression = "none";
  std::string group_by;
  std::string harden;
  bool curves = false;
  std::string curves_soft = "error";
  bool interclass = false;
  std::string out;
  std::string out_format = "json";
  int threads = 0;
};

int run_eval(const EvalArgs& args) {
  using namespace softval;

  if (args.threads > 0) par::set_threads(args.threads);

  DatasetOptions opts;
  if (!args.format.empty()) {
    opts.format = dataset_format_from_string(args.format);
  } else if (args.input.size() >= 5 &&
             args.input.substr(args.input.size() - 5) == ".json") {
    opts.format = DatasetFormat::json;
  } else {
    opts.format = DatasetFormat::csv;
  }
  opts.world = args.world == "open" ? World::open : World::closed;
  if (args.world != "open" && args.world != "closed")
    fail(ErrorKind::domain_error, "--world must be 'closed' or 'open'");
  if (const char* env = std::getenv("SOFTVAL_TOL_SUM")) {
    try {
      std::size_t used = 0;
      opts.tol.row_sum = std::stod(env, &used);
      if (used != std::string(env).size() || !(opts.tol.row_sum >= 0))
        throw std::invalid_argument(env);
    } catch (const std::exception&) {
      fail(ErrorKind::domain_error,
           std::string("SOFTVAL_TOL_SUM is not a valid tolerance: '") + env +
               "'");
    }
  }
  opts.group_by = split_list(args.group_by);

  EvalConfig config;
  config.operators.clear();
  for (const std::string& op : split_list(args.operators))
    config.operators.push_back(and_kind_from_string(op));
  config.measures.clear();
  for (const std::string& m : split_list(args.measures))
    config.measures.push_back(measure_kind_from_string(m));
  for (const std::string& r : split_list(args.regression))
    config.regression.push_back(reg_kind_from_string(r));
  if (!args.harden.empty()) {
    if (args.harden == "wta") {
      config.hardening = HardeningRule::winner_takes_all();
    } else if (args.harden.rfind("threshold=", 0) == 0) {
      const std::string t = args.harden.substr(10);
      try {
        std::size_t used = 0;
        const double tv = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        config.hardening = HardeningRule::with_threshold(tv);
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        fail(ErrorKind::domain_error,
             "--harden threshold '" + t + "' is not a number");
      }
    } else {
      fail(ErrorKind::domain_error,
           "--harden must be 'wta' or 'threshold=<t>'");
    }
  }
  config.curves = args.curves;
  if (args.curves_soft == "exclude")
    config.curve_soft_rows = SoftRowPolicy::exclude;
  else if (args.curves_soft != "error")
    fail(ErrorKind::domain_error, "--curves-soft must be 'error' or 'exclude'");
  config.interclass = args.interclass;

  const ReportFormat out_format = report_format_from_string(args.out_format);

  LoadedDataset loaded = load_dataset(args.input, opts);

  DatasetInfo info;
  info.path = args.input;
  info.digest_hex = loaded.digest_hex;
  info.format = opts.format;
  info.world = opts.world;
  info.tol = opts.tol;
  info.group_by = loaded.group_columns;

  const EvaluationReport report =
      run_evaluation(loaded.groups, config, info);
  write_report(report, args.out, out_format);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softval: validation measures for soft (partial class "
               "membership) classifiers"};
  app.set_version_flag("--version", softval::version);
  app.require_subcommand(1);

  EvalArgs args;
  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate a reference/prediction table and emit a report");
  eval->add_option("--ref-pred", args.input,
                   "input table with ref:<class> and pred:<class> columns")
      ->required();
  eval->add_option("--format", args.format,
                   "input format: csv|json (default: by file extension)");
  eval->add_option("--world", args.world, "closed|open (default closed)");
  eval->add_option("--operators", args.operators,
                   "comma list of strong,product,weak (default all)");
  eval->add_option("--measures", args.measures,
                   "comma list of sens,spec,ppv,npv or 'none' (default all)");
  eval->add_option("--regression", args.regression,
                   "comma list of mae,rmse or 'none' (default none)");
  eval->add_option("--group-by", args.group_by,
                   "comma list of group columns (default: every extra column)");
  eval->add_option("--harden", args.harden,
                   "also report measures on hardened predictions: "
                   "wta|threshold=<t>");
  eval->add_flag("--curves", args.curves,
                 "emit hardening-threshold spec/sens curves and bands");
  eval->add_option("--curves-soft", args.curves_soft,
                   "soft reference rows in curves: error|exclude "
                   "(default error)");
  eval->add_flag("--interclass", args.interclass,
                 "emit summed inter-class mae/rmse errors");
  eval->add_option("--out", args.out, "output path (default: stdout)");
  eval->add_option("--out-format", args.out_format,
                   "json|csv|table (default json)");
  eval->add_option("--threads", args.threads,
                   "worker threads (default: OpenMP default); results do not "
                   "depend on this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input_error;
  }

  try {
    return run_eval(args);
  } catch (const softval::Error& e) {
    std::cerr << "softval: " << e.what() << "\n";
    return is_input_error(e.kind()) ? exit_input_error : exit_compute_error;
  } catch (const std::exception& e) {
    std::cerr << "softval: internal error: " << e.what() << "\n";
    return exit_compute_error;
  }
}
