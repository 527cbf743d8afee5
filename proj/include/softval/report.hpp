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
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softval/measures.hpp"
#include "softval/membership.hpp"
#include "softval/regression.hpp"

namespace softval {

enum class ReportFormat { json, csv, table };
ReportFormat report_format_from_string(std::string_view s);
const char* to_string(ReportFormat f) noexcept;

enum class DatasetFormat { csv, json };
DatasetFormat dataset_format_from_string(std::string_view s);
const char* to_string(DatasetFormat f) noexcept;

struct ReportMeta {
  std::string tool = "softval";
  std::string version;
  std::string dataset;         // input path as given on the command line
  std::string dataset_digest;  // fnv1a-64 of the raw input bytes, hex
  std::string dataset_format;  // "csv" or "json"
  World world = World::closed;
  double tol_clamp = 1e-9;
  double tol_sum = 1e-6;
  std::vector<std::string> operators;
  std::vector<std::string> measures;
  std::vector<std::string> regression;
  std::string hardening;  // "", "wta" or "threshold=<t>"
  std::vector<std::string> group_by;
  std::vector<std::string> classes;
  // Pooled mean reference membership per class, aligned with classes.
  // Predictive values (ppv/npv) depend on these test-set proportions and do
  // not transfer to populations with different priors.
  std::vector<double> class_prevalence;
  std::uint64_t n_samples = 0;
  std::uint64_t n_groups = 0;
  bool curves = false;
  bool interclass = false;
};

struct ResultRow {
  std::string group;
  std::string class_name;
  MeasureKind measure = MeasureKind::sens;
  Flavor flavor = Flavor::product;
  std::optional<double> value;  // absent = undefined, serialized as null
  double denominator = 0.0;
  std::string reason;  // why the value is undefined; empty when defined
};

struct StatRow {
  std::string class_name;
  MeasureKind measure = MeasureKind::sens;
  Flavor flavor = Flavor::product;
  std::optional<double> mean, sd, p25, p50, p75;
  std::uint64_t n_groups = 0;    // groups with a defined value
  std::uint64_t n_undefined = 0;
};

struct ConfusionBlock {
  std::string group;
  std::string op;  // strong | product | weak
  std::uint64_t n_samples = 0;
  std::vector<std::string> class_names;
  std::vector<double> counts;  // n_g x n_g row-major, rows = reference
};

struct CurveRow {
  std::string group;
  std::string class_name;
  double threshold = 0.0;
  double spec = 0.0;
  double sens = 0.0;
};

struct BandRow {
  std::string class_name;
  double threshold = 0.0;
  double spec_p25 = 0.0, spec_p50 = 0.0, spec_p75 = 0.0;
  double sens_p25 = 0.0, sens_p50 = 0.0, sens_p75 = 0.0;
};

struct InterclassRow {
  std::string group;
  RegKind kind = RegKind::mae;
  double value = 0.0;       // unnormalized
  double bound = 0.0;       // maximal attainable value
  double normalized = 0.0;  // value / bound
};

/// Full evaluation output. Serialization is deterministic: identical reports
/// produce identical bytes, and json -> csv -> json round-trips bit-exactly
/// (reals are rendered with 17 significant digits).
struct EvaluationReport {
  ReportMeta meta;
  std::vector<ResultRow> results;
  std::vector<StatRow> statistics;
  std::vector<ConfusionBlock> confusion;
  std::vector<CurveRow> curves;
  std::vector<BandRow> curve_bands;
  std::vector<InterclassRow> interclass;
};

/// 17 significant digits; parses back to the identical double.
std::string format_real(double v);

std::string emit_report(const EvaluationReport& report, ReportFormat format);
EvaluationReport parse_report_json(const std::string& text);
EvaluationReport parse_report_csv(const std::string& text);

/// Writes to the given path, or to stdout when the path is empty.
void write_report(const EvaluationReport& report, const std::string& path,
                  ReportFormat format);

}  // namespace softval
