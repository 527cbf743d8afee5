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

#include <string>
#include <vector>

#include "softval/curves.hpp"
#include "softval/membership.hpp"
#include "softval/report.hpp"

namespace softval {

/// Tabular input with one row per sample:
///   - an optional sample id column named "sample" or "id",
///   - zero or more group columns (e.g. iteration, fold, patient),
///   - reference columns "ref:<class>" and prediction columns
///     "pred:<class>" with identical class sets.
/// CSV files are UTF-8, comma-separated, '.' decimal, with a mandatory
/// header row. JSON files hold an array of flat objects keyed like the CSV
/// columns.
struct DatasetOptions {
  DatasetFormat format = DatasetFormat::csv;
  World world = World::closed;
  Tolerances tol{};
  /// Columns to group by. Empty = every column that is not the id and not a
  /// ref:/pred: column. With no group columns the file forms one group with
  /// an empty key.
  std::vector<std::string> group_by;
};

struct LoadedDataset {
  GroupedPredictions groups;
  std::string digest_hex;                  // fnv1a-64 of the raw bytes
  std::vector<std::string> group_columns;  // columns actually grouped by
};

/// Parses in-memory content (CSV or JSON per options).
LoadedDataset parse_dataset(const std::string& content,
                            const DatasetOptions& opts);

/// Reads and parses a file.
LoadedDataset load_dataset(const std::string& path, const DatasetOptions& opts);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string to_hex(std::uint64_t v);

}  // namespace softval
