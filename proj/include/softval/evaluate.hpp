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

#include <optional>
#include <string>
#include <vector>

#include "softval/curves.hpp"
#include "softval/dataset.hpp"
#include "softval/report.hpp"

namespace softval {

struct EvalConfig {
  std::vector<AndKind> operators = {AndKind::strong, AndKind::product,
                                    AndKind::weak};
  std::vector<MeasureKind> measures = {MeasureKind::sens, MeasureKind::spec,
                                       MeasureKind::ppv, MeasureKind::npv};
  std::vector<RegKind> regression;    // residual flavors of the measures
  std::vector<std::string> classes;   // empty = all classes
  std::optional<HardeningRule> hardening;
  bool curves = false;
  SoftRowPolicy curve_soft_rows = SoftRowPolicy::error;
  bool interclass = false;
};

/// Dataset provenance recorded in the report meta block.
struct DatasetInfo {
  std::string path;
  std::string digest_hex;
  DatasetFormat format = DatasetFormat::csv;
  World world = World::closed;
  Tolerances tol{};
  std::vector<std::string> group_by;
};

/// Evaluates every group and assembles the report: per-group measure values,
/// cross-group statistics, per-group confusion counts per operator, optional
/// hardening-threshold curves with cross-group percentile bands, and
/// optional summed inter-class errors. Groups are processed independently
/// (in parallel) and emitted in sorted key order; output is deterministic
/// for any thread count.
EvaluationReport run_evaluation(const GroupedPredictions& gp,
                                const EvalConfig& config,
                                const DatasetInfo& info);

}  // namespace softval
