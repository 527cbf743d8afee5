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
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "softval/evaluate.hpp"
#include "softval/measures.hpp"

using namespace softval;

namespace {

const char* kTwoSampleCsv =
    "sample,ref:A,ref:B,pred:A,pred:B\n"
    "s1,1,0,0.8,0.2\n"
    "s2,0.5,0.5,0.6,0.4\n";

const char* kGroupedCsv =
    "sample,iteration,ref:A,ref:B,pred:A,pred:B\n"
    "s1,1,1,0,0.9,0.1\n"
    "s2,1,0,1,0.2,0.8\n"
    "s3,2,1,0,0.7,0.3\n"
    "s4,2,0,1,0.4,0.6\n"
    "s5,3,1,0,0.6,0.4\n"
    "s6,3,0,1,0.1,0.9\n";

DatasetInfo info_for(const LoadedDataset& loaded, const DatasetOptions& opts) {
  DatasetInfo info;
  info.path = "fixture.csv";
  info.digest_hex = loaded.digest_hex;
  info.format = opts.format;
  info.world = opts.world;
  info.tol = opts.tol;
  info.group_by = loaded.group_columns;
  return info;
}

}  // namespace

TEST_CASE("a two-sample file parses into one default group") {
  const auto loaded = parse_dataset(kTwoSampleCsv, DatasetOptions{});
  CHECK(loaded.groups.size() == 1);
  CHECK(loaded.groups.group(0).key.empty());
  CHECK(loaded.groups.group(0).ref.rows() == 2);
  CHECK(loaded.groups.class_names() == std::vector<std::string>{"A", "B"});
  CHECK(loaded.groups.group(0).pred.at(0, 0) == 0.8);
}

TEST_CASE("an iteration column splits the file into groups") {
  const auto loaded = parse_dataset(kGroupedCsv, DatasetOptions{});
  CHECK(loaded.groups.size() == 3);
  CHECK(loaded.group_columns == std::vector<std::string>{"iteration"});
  CHECK(loaded.groups.group(0).key == "iteration=1");
  CHECK(loaded.groups.group(2).key == "iteration=3");
  CHECK(loaded.groups.group(1).ref.rows() == 2);

  SUBCASE("group-by can name the column explicitly") {
    DatasetOptions opts;
    opts.group_by = {"iteration"};
    CHECK(parse_dataset(kGroupedCsv, opts).groups.size() == 3);
  }

  SUBCASE("an unknown group column is a schema error") {
    DatasetOptions opts;
    opts.group_by = {"fold"};
    try {
      parse_dataset(kGroupedCsv, opts);
      FAIL("expected schema error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::schema_error);
    }
  }
}

TEST_CASE("numeric group keys sort numerically end to end") {
  std::string csv = "sample,iteration,ref:A,ref:B,pred:A,pred:B\n";
  for (int it : {10, 2, 1}) {
    csv += "p" + std::to_string(it) + "," + std::to_string(it) +
           ",1,0,0.9,0.1\n";
    csv += "q" + std::to_string(it) + "," + std::to_string(it) +
           ",0,1,0.1,0.9\n";
  }
  const auto loaded = parse_dataset(csv, DatasetOptions{});
  REQUIRE(loaded.groups.size() == 3);
  CHECK(loaded.groups.group(0).key == "iteration=1");
  CHECK(loaded.groups.group(1).key == "iteration=2");
  CHECK(loaded.groups.group(2).key == "iteration=10");
}

TEST_CASE("closed-world row sum violations name the sample") {
  const std::string bad =
      "sample,ref:A,ref:B,pred:A,pred:B\n"
      "ok,1,0,0.5,0.5\n"
      "broken,0.7,0.2,0.5,0.5\n";
  try {
    parse_dataset(bad, DatasetOptions{});
    FAIL("expected row sum violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::row_sum_violation);
    CHECK(std::string(e.what()).find("broken") != std::string::npos);
  }
}

TEST_CASE("parse errors carry coordinates") {
  const std::string bad =
      "sample,ref:A,ref:B,pred:A,pred:B\n"
      "s1,1,0,oops,0.2\n";
  try {
    parse_dataset(bad, DatasetOptions{});
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("pred:A") != std::string::npos);
  }
}

TEST_CASE("schema checks") {
  try {
    parse_dataset("sample,ref:A,pred:A,pred:B\ns1,1,0.5,0.5\n",
                  DatasetOptions{});
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::schema_error);
  }
  CHECK_THROWS_AS(parse_dataset("", DatasetOptions{}), Error);
}

TEST_CASE("JSON datasets load like CSV ones") {
  const std::string json_text = R"([
    {"sample": "s1", "ref:A": 1, "ref:B": 0, "pred:A": 0.8, "pred:B": 0.2},
    {"sample": "s2", "ref:A": 0.5, "ref:B": 0.5, "pred:A": 0.6, "pred:B": 0.4}
  ])";
  DatasetOptions opts;
  opts.format = DatasetFormat::json;
  const auto loaded = parse_dataset(json_text, opts);
  CHECK(loaded.groups.size() == 1);
  const auto& g = loaded.groups.group(0);
  CHECK(g.ref.at(1, 0) == 0.5);
  CHECK(g.pred.at(1, 1) == 0.4);
}

TEST_CASE("a UTF-8 byte order mark is tolerated") {
  const std::string with_bom = std::string("\xef\xbb\xbf") + kTwoSampleCsv;
  const auto loaded = parse_dataset(with_bom, DatasetOptions{});
  CHECK(loaded.groups.class_names().front() == "A");
  CHECK(loaded.digest_hex !=
        parse_dataset(kTwoSampleCsv, DatasetOptions{}).digest_hex);
}

TEST_CASE("quoted CSV fields survive") {
  const std::string text =
      "sample,site,ref:A,ref:B,pred:A,pred:B\n"
      "s1,\"lab, north\",1,0,0.9,0.1\n"
      "s2,\"lab, north\",0,1,0.2,0.8\n";
  const auto loaded = parse_dataset(text, DatasetOptions{});
  CHECK(loaded.groups.size() == 1);
  CHECK(loaded.groups.group(0).key == "site=lab, north");
}

TEST_CASE("evaluation report values match the measure layer") {
  const auto loaded = parse_dataset(kTwoSampleCsv, DatasetOptions{});
  EvalConfig config;
  config.operators = {AndKind::product};
  config.measures = {MeasureKind::sens, MeasureKind::spec};
  const auto report =
      run_evaluation(loaded.groups, config, info_for(loaded, DatasetOptions{}));

  REQUIRE(report.results.size() == 4);  // 2 classes x 2 measures
  const auto& g = loaded.groups.group(0);
  for (const ResultRow& row : report.results) {
    const std::size_t cls = row.class_name == "A" ? 0 : 1;
    const auto expect = measure(row.measure, g.ref, g.pred, cls,
                                AndKind::product);
    CHECK(*row.value == *expect.value);
    CHECK(row.denominator == expect.denominator);
  }
  // the class-A product sensitivity is the fixture value 1.1/1.5
  CHECK(*report.results.front().value ==
        doctest::Approx(1.1 / 1.5).epsilon(1e-14));
  CHECK(report.meta.n_samples == 2);
  CHECK(report.meta.class_prevalence[0] ==
        doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("reports keep the operator ordering per cell") {
  const auto loaded = parse_dataset(kGroupedCsv, DatasetOptions{});
  const auto report = run_evaluation(loaded.groups, EvalConfig{},
                                     info_for(loaded, DatasetOptions{}));
  // rows come in flavor order strong, product, weak within each cell
  for (std::size_t i = 0; i + 2 < report.results.size(); i += 3) {
    const auto& s = report.results[i];
    const auto& m = report.results[i + 1];
    const auto& w = report.results[i + 2];
    REQUIRE(s.flavor == Flavor::strong);
    REQUIRE(m.flavor == Flavor::product);
    REQUIRE(w.flavor == Flavor::weak);
    if (s.value && m.value && w.value) {
      CHECK(*s.value <= *m.value);
      CHECK(*m.value <= *w.value);
    }
  }
  CHECK(report.statistics.size() == 2 * 4 * 3);  // class x measure x flavor
}

TEST_CASE("hardening a crisp fixture changes nothing") {
  const std::string crisp_csv =
      "sample,ref:A,ref:B,pred:A,pred:B\n"
      "s1,1,0,1,0\n"
      "s2,0,1,0,1\n"
      "s3,1,0,0,1\n";
  const auto loaded = parse_dataset(crisp_csv, DatasetOptions{});
  EvalConfig config;
  config.hardening = HardeningRule::winner_takes_all();
  const auto report = run_evaluation(loaded.groups, config,
                                     info_for(loaded, DatasetOptions{}));
  // crisp-flavor rows equal the operator rows
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const auto& row = report.results[i];
    if (row.flavor != Flavor::crisp) continue;
    for (const auto& other : report.results)
      if (other.group == row.group && other.class_name == row.class_name &&
          other.measure == row.measure && other.flavor == Flavor::product)
        CHECK(*row.value == *other.value);
  }
  CHECK(report.meta.hardening == "wta");
}

TEST_CASE("an empty measure set yields a metadata-only report") {
  const auto loaded = parse_dataset(kTwoSampleCsv, DatasetOptions{});
  EvalConfig config;
  config.measures.clear();
  const auto report = run_evaluation(loaded.groups, config,
                                     info_for(loaded, DatasetOptions{}));
  CHECK(report.results.empty());
  CHECK(report.statistics.empty());
  CHECK(report.confusion.empty());
  CHECK(report.meta.n_samples == 2);
  const std::string text = emit_report(report, ReportFormat::json);
  CHECK(text.find("\"results\": []") != std::string::npos);
}

TEST_CASE("the worked single-sample fixture renders 0.300/0.400/0.500") {
  const std::string csv =
      "sample,ref:A,ref:B,pred:A,pred:B\n"
      "s1,0.5,0.5,0.8,0.2\n";
  const auto loaded = parse_dataset(csv, DatasetOptions{});
  const auto report = run_evaluation(loaded.groups, EvalConfig{},
                                     info_for(loaded, DatasetOptions{}));
  const std::string table = emit_report(report, ReportFormat::table);
  CHECK(table.find("0.300") != std::string::npos);
  CHECK(table.find("0.400") != std::string::npos);
  CHECK(table.find("0.500") != std::string::npos);
}

TEST_CASE("json -> csv -> json round-trips bit-exactly") {
  const auto loaded = parse_dataset(kGroupedCsv, DatasetOptions{});
  EvalConfig config;
  config.regression = {RegKind::mae, RegKind::rmse};
  config.hardening = HardeningRule::with_threshold(1.0 / 3.0);
  config.curves = true;
  config.interclass = true;
  const auto report = run_evaluation(loaded.groups, config,
                                     info_for(loaded, DatasetOptions{}));

  const std::string json_1 = emit_report(report, ReportFormat::json);
  const std::string csv_text =
      emit_report(parse_report_json(json_1), ReportFormat::csv);
  const std::string json_2 =
      emit_report(parse_report_csv(csv_text), ReportFormat::json);
  CHECK(json_1 == json_2);

  SUBCASE("emission is deterministic") {
    CHECK(emit_report(report, ReportFormat::json) == json_1);
    CHECK(emit_report(report, ReportFormat::csv) == csv_text);
  }
}

TEST_CASE("comma-bearing class names survive the full round trip") {
  const std::string csv =
      "sample,\"ref:grade II, low\",ref:other,\"pred:grade II, low\","
      "pred:other\n"
      "s1,1,0,0.8,0.2\n"
      "s2,0,1,0.3,0.7\n";
  const auto loaded = parse_dataset(csv, DatasetOptions{});
  CHECK(loaded.groups.class_names().front() == "grade II, low");
  const auto report = run_evaluation(loaded.groups, EvalConfig{},
                                     info_for(loaded, DatasetOptions{}));
  const std::string json_1 = emit_report(report, ReportFormat::json);
  const std::string csv_text =
      emit_report(parse_report_json(json_1), ReportFormat::csv);
  const std::string json_2 =
      emit_report(parse_report_csv(csv_text), ReportFormat::json);
  CHECK(json_1 == json_2);
}

TEST_CASE("formatted reals parse back to the identical double") {
  std::mt19937_64 rng(141);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double v = uni(rng);
    CHECK(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(1.0) == "1");
  CHECK(std::stod(format_real(1e-9)) == 1e-9);
}

TEST_CASE("requesting curves with soft references errors in strict mode") {
  const auto loaded = parse_dataset(kTwoSampleCsv, DatasetOptions{});
  EvalConfig config;
  config.curves = true;
  try {
    run_evaluation(loaded.groups, config, info_for(loaded, DatasetOptions{}));
    FAIL("expected soft reference error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::soft_reference_error);
  }
}

TEST_CASE("propagated group errors name the group") {
  // iteration 2 has only class-B rows, so its class-A curve is degenerate
  const std::string csv =
      "sample,iteration,ref:A,ref:B,pred:A,pred:B\n"
      "s1,1,1,0,0.9,0.1\n"
      "s2,1,0,1,0.2,0.8\n"
      "s3,2,0,1,0.3,0.7\n"
      "s4,2,0,1,0.4,0.6\n";
  const auto loaded = parse_dataset(csv, DatasetOptions{});
  EvalConfig config;
  config.curves = true;
  try {
    run_evaluation(loaded.groups, config, info_for(loaded, DatasetOptions{}));
    FAIL("expected a group-annotated error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("iteration=2") != std::string::npos);
  }
}

TEST_CASE("CLI exit codes" * doctest::skip(std::getenv("SOFTVAL_CLI") == nullptr)) {
  // Runs only under ctest, which exports the tool path.
  namespace fs = std::filesystem;
  const std::string cli = std::getenv("SOFTVAL_CLI");
  const fs::path dir = fs::temp_directory_path() / "softval_cli_tests";
  fs::create_directories(dir);

  auto write = [&](const char* name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  auto run = [&](const std::string& args) {
    const std::string cmd =
        "\"" + cli + "\" " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };

  const std::string good = write("good.csv", kTwoSampleCsv);
  const std::string bad_schema =
      write("bad_schema.csv", "sample,ref:A,pred:A,pred:B\ns1,1,0.5,0.5\n");
  const std::string bad_sum = write(
      "bad_sum.csv", "sample,ref:A,ref:B,pred:A,pred:B\nx,0.7,0.2,0.5,0.5\n");

  CHECK(run("eval --ref-pred " + good + " --out " +
            (dir / "out.json").string()) == 0);
  CHECK(run("eval --ref-pred " + bad_schema) == 2);
  CHECK(run("eval --ref-pred " + bad_sum) == 2);
  CHECK(run("eval --ref-pred " + (dir / "missing.csv").string()) == 2);
  // soft references with curves in strict mode: a computation error
  CHECK(run("eval --ref-pred " + good + " --curves") == 3);
  // undefined-only results are not an error: class B never referenced
  const std::string undef = write(
      "undef.csv",
      "sample,ref:A,ref:B,pred:A,pred:B\ns1,1,0,0.5,0.5\ns2,1,0,0.8,0.2\n");
  CHECK(run("eval --ref-pred " + undef + " --measures sens") == 0);
  // the row-sum tolerance is env-tunable
  CHECK(run("eval --ref-pred " + bad_sum + " --measures sens") == 2);
  const std::string cmd_env = "SOFTVAL_TOL_SUM=0.2 \"" + cli +
                              "\" eval --ref-pred " + bad_sum +
                              " --measures sens >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd_env.c_str())) == 0);
}

TEST_CASE("curve output is long-format and bands share the grid") {
  const auto loaded = parse_dataset(kGroupedCsv, DatasetOptions{});
  EvalConfig config;
  config.curves = true;
  const auto report = run_evaluation(loaded.groups, config,
                                     info_for(loaded, DatasetOptions{}));
  CHECK(!report.curves.empty());
  CHECK(!report.curve_bands.empty());
  for (const auto& band : report.curve_bands) {
    CHECK(band.sens_p25 <= band.sens_p50);
    CHECK(band.sens_p50 <= band.sens_p75);
  }
}
