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
#include "softval/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "table_io.hpp"

namespace softval {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;  // 1-based source line per data row
};

Table read_csv(const std::string& text) {
  detail::CsvRecords recs = detail::read_csv_records(text);
  if (recs.records.empty())
    fail(ErrorKind::parse_error, "missing header row");
  Table t;
  t.header = std::move(recs.records.front());
  t.rows.assign(std::make_move_iterator(recs.records.begin() + 1),
                std::make_move_iterator(recs.records.end()));
  t.row_lines.assign(recs.lines.begin() + 1, recs.lines.end());
  return t;
}

double parse_cell(const std::string& cell, std::size_t line,
                  const std::string& column) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    fail(ErrorKind::parse_error, "line " + std::to_string(line) +
                                     ", column '" + column +
                                     "': cannot parse '" + cell +
                                     "' as a finite number");
  return v;
}

std::string json_scalar_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_null()) return "";
  fail(ErrorKind::parse_error, "unsupported JSON cell type");
}

Table json_to_table(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array())
    fail(ErrorKind::parse_error,
         "expected a top-level JSON array of sample records");

  Table t;
  std::size_t index = 0;
  for (const auto& rec : doc) {
    ++index;
    if (!rec.is_object())
      fail(ErrorKind::parse_error,
           "record " + std::to_string(index) + " is not an object");
    if (t.header.empty())
      for (auto it = rec.begin(); it != rec.end(); ++it)
        t.header.push_back(it.key());
    std::vector<std::string> row(t.header.size());
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      const auto it = rec.find(t.header[c]);
      if (it == rec.end())
        fail(ErrorKind::schema_error, "record " + std::to_string(index) +
                                          " lacks field '" + t.header[c] +
                                          "'");
      row[c] = json_scalar_to_string(*it);
    }
    t.rows.push_back(std::move(row));
    t.row_lines.push_back(index);
  }
  if (t.header.empty())
    fail(ErrorKind::schema_error, "dataset holds no records");
  return t;
}

struct GroupKeyLess {
  bool operator()(const std::vector<std::string>& a,
                  const std::vector<std::string>& b) const {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i] == b[i]) continue;
      return group_key_less(a[i], b[i]);
    }
    return a.size() < b.size();
  }
};

}  // namespace

DatasetFormat dataset_format_from_string(std::string_view s) {
  if (s == "csv") return DatasetFormat::csv;
  if (s == "json") return DatasetFormat::json;
  fail(ErrorKind::domain_error,
       "unknown dataset format '" + std::string(s) + "'");
}

const char* to_string(DatasetFormat f) noexcept {
  return f == DatasetFormat::csv ? "csv" : "json";
}

LoadedDataset parse_dataset(const std::string& content,
                            const DatasetOptions& opts) {
  // Tolerate a UTF-8 byte order mark; the digest still covers the raw bytes.
  std::string_view body = content;
  if (body.rfind("\xef\xbb\xbf", 0) == 0) body.remove_prefix(3);

  const Table table = opts.format == DatasetFormat::csv
                          ? read_csv(std::string(body))
                          : json_to_table(std::string(body));

  // Classify columns.
  std::ptrdiff_t id_col = -1;
  std::vector<std::string> ref_classes, pred_classes;
  std::vector<std::size_t> ref_cols, pred_cols;
  std::vector<std::string> other_cols;
  std::vector<std::size_t> other_idx;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name.empty() || name == "ref:" || name == "pred:")
      fail(ErrorKind::schema_error,
           "header column " + std::to_string(c + 1) + " has no usable name");
    if (name.rfind("ref:", 0) == 0) {
      ref_classes.push_back(name.substr(4));
      ref_cols.push_back(c);
    } else if (name.rfind("pred:", 0) == 0) {
      pred_classes.push_back(name.substr(5));
      pred_cols.push_back(c);
    } else if (id_col < 0 && (name == "sample" || name == "id")) {
      id_col = static_cast<std::ptrdiff_t>(c);
    } else {
      other_cols.push_back(name);
      other_idx.push_back(c);
    }
  }
  if (ref_classes.empty() || pred_classes.empty())
    fail(ErrorKind::schema_error,
         "need ref:<class> and pred:<class> columns");
  {
    std::vector<std::string> rs = ref_classes, ps = pred_classes;
    std::sort(rs.begin(), rs.end());
    std::sort(ps.begin(), ps.end());
    if (rs != ps)
      fail(ErrorKind::schema_error,
           "ref:<class> and pred:<class> column sets differ");
    if (std::adjacent_find(rs.begin(), rs.end()) != rs.end())
      fail(ErrorKind::schema_error, "duplicate class columns");
  }
  // Align pred columns with the ref class order.
  std::vector<std::size_t> pred_by_ref(ref_classes.size());
  for (std::size_t g = 0; g < ref_classes.size(); ++g) {
    const auto it =
        std::find(pred_classes.begin(), pred_classes.end(), ref_classes[g]);
    pred_by_ref[g] = pred_cols[static_cast<std::size_t>(
        it - pred_classes.begin())];
  }

  // Resolve group columns.
  std::vector<std::string> group_cols;
  std::vector<std::size_t> group_idx;
  if (opts.group_by.empty()) {
    group_cols = other_cols;
    group_idx = other_idx;
  } else {
    for (const std::string& want : opts.group_by) {
      const auto it = std::find(other_cols.begin(), other_cols.end(), want);
      if (it == other_cols.end())
        fail(ErrorKind::schema_error,
             "group column '" + want + "' not found in the dataset");
      group_cols.push_back(want);
      group_idx.push_back(other_idx[static_cast<std::size_t>(
          it - other_cols.begin())]);
    }
  }

  const std::size_t ng = ref_classes.size();
  struct Bucket {
    std::vector<double> ref, pred;
    std::vector<std::string> ids;
  };
  std::map<std::vector<std::string>, Bucket, GroupKeyLess> buckets;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    if (row.size() != table.header.size())
      fail(ErrorKind::parse_error,
           "line " + std::to_string(line) + ": expected " +
               std::to_string(table.header.size()) + " fields, got " +
               std::to_string(row.size()));

    std::vector<std::string> key(group_idx.size());
    for (std::size_t k = 0; k < group_idx.size(); ++k)
      key[k] = row[group_idx[k]];
    Bucket& bucket = buckets[key];

    bucket.ids.push_back(id_col >= 0
                             ? row[static_cast<std::size_t>(id_col)]
                             : std::to_string(r + 1));
    for (std::size_t g = 0; g < ng; ++g) {
      bucket.ref.push_back(
          parse_cell(row[ref_cols[g]], line, table.header[ref_cols[g]]));
      bucket.pred.push_back(
          parse_cell(row[pred_by_ref[g]], line, table.header[pred_by_ref[g]]));
    }
  }
  if (buckets.empty()) fail(ErrorKind::schema_error, "dataset holds no rows");

  std::vector<GroupedPredictions::Group> groups;
  groups.reserve(buckets.size());
  for (auto& [key, bucket] : buckets) {
    std::string key_str;
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (k > 0) key_str += ',';
      key_str += group_cols[k] + "=" + key[k];
    }
    const std::size_t n = bucket.ids.size();
    MembershipMatrix ref = MembershipMatrix::validate(
        std::move(bucket.ref), n, ref_classes, opts.world, opts.tol,
        bucket.ids);
    MembershipMatrix pred = MembershipMatrix::validate(
        std::move(bucket.pred), n, ref_classes, opts.world, opts.tol,
        bucket.ids);
    groups.push_back({std::move(key_str), std::move(ref), std::move(pred)});
  }

  return LoadedDataset{GroupedPredictions::from_groups(std::move(groups)),
                       to_hex(fnv1a64(content)), std::move(group_cols)};
}

LoadedDataset load_dataset(const std::string& path,
                           const DatasetOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io_error, "cannot read '" + path + "'");
  return parse_dataset(buf.str(), opts);
}

}  // namespace softval
