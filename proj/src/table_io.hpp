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

// Internal CSV plumbing shared by the dataset loader and the report
// serializer. RFC 4180 style: quoted fields may contain commas, escaped
// quotes, and newlines.

#include <cstddef>
#include <string>
#include <vector>

namespace softval::detail {

struct CsvRecords {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> lines;  // 1-based starting line per record
};

CsvRecords read_csv_records(const std::string& text);

/// Quotes a field when it contains a comma, quote, or newline.
std::string csv_quote(const std::string& field);

}  // namespace softval::detail
