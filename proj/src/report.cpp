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
#include "softval/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "table_io.hpp"

namespace softval {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string jstr_list(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    out += jstr(xs[i]);
  }
  return out + "]";
}

std::string jreal_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(xs[i]);
  }
  return out + "]";
}

std::string jopt(const std::optional<double>& v) {
  return v ? format_real(*v) : "null";
}

std::string fmt_u64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%" PRIu64, v);
  return buf;
}

// ---------------------------------------------------------------------------
// JSON emission

void emit_meta_json(std::ostringstream& os, const ReportMeta& m) {
  os << "  \"meta\": {\n";
  os << "    \"tool\": " << jstr(m.tool) << ",\n";
  os << "    \"version\": " << jstr(m.version) << ",\n";
  os << "    \"dataset\": " << jstr(m.dataset) << ",\n";
  os << "    \"dataset_digest\": " << jstr(m.dataset_digest) << ",\n";
  os << "    \"dataset_format\": " << jstr(m.dataset_format) << ",\n";
  os << "    \"world\": " << jstr(to_string(m.world)) << ",\n";
  os << "    \"tol_clamp\": " << format_real(m.tol_clamp) << ",\n";
  os << "    \"tol_sum\": " << format_real(m.tol_sum) << ",\n";
  os << "    \"operators\": " << jstr_list(m.operators) << ",\n";
  os << "    \"measures\": " << jstr_list(m.measures) << ",\n";
  os << "    \"regression\": " << jstr_list(m.regression) << ",\n";
  os << "    \"hardening\": " << (m.hardening.empty() ? "null" : jstr(m.hardening))
     << ",\n";
  os << "    \"group_by\": " << jstr_list(m.group_by) << ",\n";
  os << "    \"classes\": " << jstr_list(m.classes) << ",\n";
  os << "    \"class_prevalence\": " << jreal_list(m.class_prevalence) << ",\n";
  os << "    \"n_samples\": " << fmt_u64(m.n_samples) << ",\n";
  os << "    \"n_groups\": " << fmt_u64(m.n_groups) << ",\n";
  os << "    \"curves\": " << (m.curves ? "true" : "false") << ",\n";
  os << "    \"interclass\": " << (m.interclass ? "true" : "false") << "\n";
  os << "  }";
}

std::string emit_json(const EvaluationReport& rep) {
  std::ostringstream os;
  os << "{\n";
  emit_meta_json(os, rep.meta);

  os << ",\n  \"results\": [";
  for (std::size_t i = 0; i < rep.results.size(); ++i) {
    const ResultRow& r = rep.results[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"group\": " << jstr(r.group) << ", \"class\": "
       << jstr(r.class_name) << ", \"measure\": " << jstr(to_string(r.measure))
       << ", \"operator\": " << jstr(to_string(r.flavor))
       << ", \"value\": " << jopt(r.value)
       << ", \"denominator\": " << format_real(r.denominator);
    if (!r.reason.empty()) os << ", \"reason\": " << jstr(r.reason);
    os << "}";
  }
  os << (rep.results.empty() ? "]" : "\n  ]");

  os << ",\n  \"statistics\": [";
  for (std::size_t i = 0; i < rep.statistics.size(); ++i) {
    const StatRow& s = rep.statistics[i];
    os << (i ? ",\n    " : "\n    ");
    os << "{\"class\": " << jstr(s.class_name) << ", \"measure\": "
       << jstr(to_string(s.measure)) << ", \"operator\": "
       << jstr(to_string(s.flavor)) << ", \"mean\": " << jopt(s.mean)
       << ", \"sd\": " << jopt(s.sd) << ", \"p25\": " << jopt(s.p25)
       << ", \"p50\": " << jopt(s.p50) << ", \"p75\": " << jopt(s.p75)
       << ", \"n_groups\": " << fmt_u64(s.n_groups)
       << ", \"n_undefined\": " << fmt_u64(s.n_undefined) << "}";
  }
  os << (rep.statistics.empty() ? "]" : "\n  ]");

  os << ",\n  \"confusion\": [";
  for (std::size_t i = 0; i < rep.confusion.size(); ++i) {
    const ConfusionBlock& c = rep.confusion[i];
    const std::size_t ng = c.class_names.size();
    os << (i ? ",\n    " : "\n    ");
    os << "{\"group\": " << jstr(c.group) << ", \"operator\": " << jstr(c.op)
       << ", \"n_samples\": " << fmt_u64(c.n_samples)
       << ", \"classes\": " << jstr_list(c.class_names) << ", \"counts\": [";
    for (std::size_t gi = 0; gi < ng; ++gi) {
      if (gi > 0) os << ", ";
      os << "[";
      for (std::size_t gj = 0; gj < ng; ++gj) {
        if (gj > 0) os << ", ";
        os << format_real(c.counts[gi * ng + gj]);
      }
      os << "]";
    }
    os << "]}";
  }
  os << (rep.confusion.empty() ? "]" : "\n  ]");

  if (!rep.curves.empty()) {
    os << ",\n  \"curves\": [";
    for (std::size_t i = 0; i < rep.curves.size(); ++i) {
      const CurveRow& c = rep.curves[i];
      os << (i ? ",\n    " : "\n    ");
      os << "{\"group\": " << jstr(c.group) << ", \"class\": "
         << jstr(c.class_name) << ", \"threshold\": "
         << format_real(c.threshold) << ", \"spec\": " << format_real(c.spec)
         << ", \"sens\": " << format_real(c.sens) << "}";
    }
    os << "\n  ]";
  }

  if (!rep.curve_bands.empty()) {
    os << ",\n  \"curve_bands\": [";
    for (std::size_t i = 0; i < rep.curve_bands.size(); ++i) {
      const BandRow& b = rep.curve_bands[i];
      os << (i ? ",\n    " : "\n    ");
      os << "{\"class\": " << jstr(b.class_name) << ", \"threshold\": "
         << format_real(b.threshold) << ", \"spec_p25\": "
         << format_real(b.spec_p25) << ", \"spec_p50\": "
         << format_real(b.spec_p50) << ", \"spec_p75\": "
         << format_real(b.spec_p75) << ", \"sens_p25\": "
         << format_real(b.sens_p25) << ", \"sens_p50\": "
         << format_real(b.sens_p50) << ", \"sens_p75\": "
         << format_real(b.sens_p75) << "}";
    }
    os << "\n  ]";
  }

  if (!rep.interclass.empty()) {
    os << ",\n  \"interclass\": [";
    for (std::size_t i = 0; i < rep.interclass.size(); ++i) {
      const InterclassRow& r = rep.interclass[i];
      os << (i ? ",\n    " : "\n    ");
      os << "{\"group\": " << jstr(r.group) << ", \"kind\": "
         << jstr(to_string(r.kind)) << ", \"value\": " << format_real(r.value)
         << ", \"bound\": " << format_real(r.bound) << ", \"normalized\": "
         << format_real(r.normalized) << "}";
    }
    os << "\n  ]";
  }

  os << "\n}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV emission

void csv_row(std::ostringstream& os,
             const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) os << ',';
    os << detail::csv_quote(fields[i]);
  }
  os << '\n';
}

std::string opt_str(const std::optional<double>& v) {
  return v ? format_real(*v) : "";
}

std::string emit_csv(const EvaluationReport& rep) {
  std::ostringstream os;
  const ReportMeta& m = rep.meta;
  os << "#softval-report v1\n";
  os << "#meta\n";
  csv_row(os, {"key", "value"});
  csv_row(os, {"tool", m.tool});
  csv_row(os, {"version", m.version});
  csv_row(os, {"dataset", m.dataset});
  csv_row(os, {"dataset_digest", m.dataset_digest});
  csv_row(os, {"dataset_format", m.dataset_format});
  csv_row(os, {"world", to_string(m.world)});
  csv_row(os, {"tol_clamp", format_real(m.tol_clamp)});
  csv_row(os, {"tol_sum", format_real(m.tol_sum)});
  csv_row(os, {"operators", join(m.operators, ';')});
  csv_row(os, {"measures", join(m.measures, ';')});
  csv_row(os, {"regression", join(m.regression, ';')});
  csv_row(os, {"hardening", m.hardening});
  csv_row(os, {"group_by", join(m.group_by, ';')});
  csv_row(os, {"classes", join(m.classes, ';')});
  {
    std::vector<std::string> prev;
    prev.reserve(m.class_prevalence.size());
    for (double p : m.class_prevalence) prev.push_back(format_real(p));
    csv_row(os, {"class_prevalence", join(prev, ';')});
  }
  csv_row(os, {"n_samples", fmt_u64(m.n_samples)});
  csv_row(os, {"n_groups", fmt_u64(m.n_groups)});
  csv_row(os, {"curves", m.curves ? "true" : "false"});
  csv_row(os, {"interclass", m.interclass ? "true" : "false"});

  os << "#results\n";
  csv_row(os, {"group", "class", "measure", "operator", "value", "denominator",
               "reason"});
  for (const ResultRow& r : rep.results)
    csv_row(os, {r.group, r.class_name, to_string(r.measure),
                 to_string(r.flavor), opt_str(r.value),
                 format_real(r.denominator), r.reason});

  os << "#statistics\n";
  csv_row(os, {"class", "measure", "operator", "mean", "sd", "p25", "p50",
               "p75", "n_groups", "n_undefined"});
  for (const StatRow& s : rep.statistics)
    csv_row(os, {s.class_name, to_string(s.measure), to_string(s.flavor),
                 opt_str(s.mean), opt_str(s.sd), opt_str(s.p25),
                 opt_str(s.p50), opt_str(s.p75), fmt_u64(s.n_groups),
                 fmt_u64(s.n_undefined)});

  os << "#confusion\n";
  csv_row(os, {"group", "operator", "ref_class", "pred_class", "count",
               "n_samples"});
  for (const ConfusionBlock& c : rep.confusion) {
    const std::size_t ng = c.class_names.size();
    for (std::size_t gi = 0; gi < ng; ++gi)
      for (std::size_t gj = 0; gj < ng; ++gj)
        csv_row(os, {c.group, c.op, c.class_names[gi], c.class_names[gj],
                     format_real(c.counts[gi * ng + gj]),
                     fmt_u64(c.n_samples)});
  }

  if (!rep.curves.empty()) {
    os << "#curves\n";
    csv_row(os, {"group", "class", "threshold", "spec", "sens"});
    for (const CurveRow& c : rep.curves)
      csv_row(os, {c.group, c.class_name, format_real(c.threshold),
                   format_real(c.spec), format_real(c.sens)});
  }

  if (!rep.curve_bands.empty()) {
    os << "#curve_bands\n";
    csv_row(os, {"class", "threshold", "spec_p25", "spec_p50", "spec_p75",
                 "sens_p25", "sens_p50", "sens_p75"});
    for (const BandRow& b : rep.curve_bands)
      csv_row(os, {b.class_name, format_real(b.threshold),
                   format_real(b.spec_p25), format_real(b.spec_p50),
                   format_real(b.spec_p75), format_real(b.sens_p25),
                   format_real(b.sens_p50), format_real(b.sens_p75)});
  }

  if (!rep.interclass.empty()) {
    os << "#interclass\n";
    csv_row(os, {"group", "kind", "value", "bound", "normalized"});
    for (const InterclassRow& r : rep.interclass)
      csv_row(os, {r.group, to_string(r.kind), format_real(r.value),
                   format_real(r.bound), format_real(r.normalized)});
  }

  return os.str();
}

// ---------------------------------------------------------------------------
// Text table emission (3 decimals, display only)

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string emit_table(const EvaluationReport& rep) {
  std::ostringstream os;
  const ReportMeta& m = rep.meta;
  os << "softval report\n";
  os << "  dataset:    " << m.dataset << " (" << m.dataset_format
     << ", digest " << m.dataset_digest << ")\n";
  os << "  world:      " << to_string(m.world) << "\n";
  os << "  samples:    " << m.n_samples << " in " << m.n_groups
     << " group(s)\n";
  os << "  operators:  " << join(m.operators, ',') << "\n";
  if (!m.hardening.empty()) os << "  hardening:  " << m.hardening << "\n";
  os << "  classes:    ";
  for (std::size_t g = 0; g < m.classes.size(); ++g) {
    if (g > 0) os << ", ";
    os << m.classes[g];
    if (g < m.class_prevalence.size())
      os << " (prevalence " << fixed3(m.class_prevalence[g]) << ")";
  }
  os << "\n";

  for (const ConfusionBlock& c : rep.confusion) {
    const std::size_t ng = c.class_names.size();
    os << "\nconfusion";
    if (!c.group.empty()) os << " [" << c.group << "]";
    os << " operator=" << c.op << " (n=" << c.n_samples << ")\n";
    std::size_t w = 9;
    for (const std::string& name : c.class_names)
      w = std::max(w, name.size() + 6);
    os << "  " << pad("ref\\pred", w);
    for (const std::string& name : c.class_names) os << pad(name, w);
    os << "\n";
    for (std::size_t gi = 0; gi < ng; ++gi) {
      os << "  " << pad(c.class_names[gi], w);
      for (std::size_t gj = 0; gj < ng; ++gj)
        os << pad(fixed3(c.counts[gi * ng + gj]), w);
      os << "\n";
    }
  }

  if (!rep.results.empty()) {
    os << "\nmeasures\n";
    os << "  " << pad("group", 16) << pad("class", 10) << pad("measure", 9)
       << pad("operator", 10) << pad("value", 9) << "denominator\n";
    for (const ResultRow& r : rep.results) {
      os << "  " << pad(r.group, 16) << pad(r.class_name, 10)
         << pad(to_string(r.measure), 9) << pad(to_string(r.flavor), 10)
         << pad(r.value ? fixed3(*r.value) : "undef", 9)
         << fixed3(r.denominator) << "\n";
    }
  }

  if (!rep.statistics.empty()) {
    os << "\ncross-group statistics\n";
    os << "  " << pad("class", 10) << pad("measure", 9) << pad("operator", 10)
       << pad("mean", 8) << pad("sd", 8) << pad("p25", 8) << pad("p50", 8)
       << pad("p75", 8) << "groups(undef)\n";
    for (const StatRow& s : rep.statistics) {
      auto cell = [](const std::optional<double>& v) {
        return v ? fixed3(*v) : std::string("-");
      };
      os << "  " << pad(s.class_name, 10) << pad(to_string(s.measure), 9)
         << pad(to_string(s.flavor), 10) << pad(cell(s.mean), 8)
         << pad(cell(s.sd), 8) << pad(cell(s.p25), 8) << pad(cell(s.p50), 8)
         << pad(cell(s.p75), 8) << s.n_groups << "(" << s.n_undefined << ")\n";
    }
  }

  if (!rep.interclass.empty()) {
    os << "\ninter-class errors\n";
    os << "  " << pad("group", 16) << pad("kind", 6) << pad("value", 9)
       << pad("bound", 9) << "normalized\n";
    for (const InterclassRow& r : rep.interclass)
      os << "  " << pad(r.group, 16) << pad(to_string(r.kind), 6)
         << pad(fixed3(r.value), 9) << pad(fixed3(r.bound), 9)
         << fixed3(r.normalized) << "\n";
  }

  if (!rep.curves.empty())
    os << "\n(" << rep.curves.size()
       << " curve points omitted; use json or csv output)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

MeasureKind measure_from(const json& v) {
  return measure_kind_from_string(v.get<std::string>());
}

std::optional<double> opt_from(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

EvaluationReport parse_json_impl(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error, std::string("invalid JSON report: ") + e.what());
  }
  EvaluationReport rep;
  try {
    const json& m = doc.at("meta");
    rep.meta.tool = m.at("tool").get<std::string>();
    rep.meta.version = m.at("version").get<std::string>();
    rep.meta.dataset = m.at("dataset").get<std::string>();
    rep.meta.dataset_digest = m.at("dataset_digest").get<std::string>();
    rep.meta.dataset_format = m.at("dataset_format").get<std::string>();
    rep.meta.world = m.at("world").get<std::string>() == "closed"
                         ? World::closed
                         : World::open;
    rep.meta.tol_clamp = m.at("tol_clamp").get<double>();
    rep.meta.tol_sum = m.at("tol_sum").get<double>();
    rep.meta.operators = m.at("operators").get<std::vector<std::string>>();
    rep.meta.measures = m.at("measures").get<std::vector<std::string>>();
    rep.meta.regression = m.at("regression").get<std::vector<std::string>>();
    rep.meta.hardening =
        m.at("hardening").is_null() ? "" : m.at("hardening").get<std::string>();
    rep.meta.group_by = m.at("group_by").get<std::vector<std::string>>();
    rep.meta.classes = m.at("classes").get<std::vector<std::string>>();
    rep.meta.class_prevalence =
        m.at("class_prevalence").get<std::vector<double>>();
    rep.meta.n_samples = m.at("n_samples").get<std::uint64_t>();
    rep.meta.n_groups = m.at("n_groups").get<std::uint64_t>();
    rep.meta.curves = m.at("curves").get<bool>();
    rep.meta.interclass = m.at("interclass").get<bool>();

    for (const json& r : doc.at("results")) {
      ResultRow row;
      row.group = r.at("group").get<std::string>();
      row.class_name = r.at("class").get<std::string>();
      row.measure = measure_from(r.at("measure"));
      row.flavor = flavor_from_string(r.at("operator").get<std::string>());
      row.value = opt_from(r.at("value"));
      row.denominator = r.at("denominator").get<double>();
      if (r.contains("reason")) row.reason = r.at("reason").get<std::string>();
      rep.results.push_back(std::move(row));
    }
    for (const json& s : doc.at("statistics")) {
      StatRow row;
      row.class_name = s.at("class").get<std::string>();
      row.measure = measure_from(s.at("measure"));
      row.flavor = flavor_from_string(s.at("operator").get<std::string>());
      row.mean = opt_from(s.at("mean"));
      row.sd = opt_from(s.at("sd"));
      row.p25 = opt_from(s.at("p25"));
      row.p50 = opt_from(s.at("p50"));
      row.p75 = opt_from(s.at("p75"));
      row.n_groups = s.at("n_groups").get<std::uint64_t>();
      row.n_undefined = s.at("n_undefined").get<std::uint64_t>();
      rep.statistics.push_back(std::move(row));
    }
    for (const json& c : doc.at("confusion")) {
      ConfusionBlock block;
      block.group = c.at("group").get<std::string>();
      block.op = c.at("operator").get<std::string>();
      block.n_samples = c.at("n_samples").get<std::uint64_t>();
      block.class_names = c.at("classes").get<std::vector<std::string>>();
      for (const json& row : c.at("counts"))
        for (const json& v : row) block.counts.push_back(v.get<double>());
      rep.confusion.push_back(std::move(block));
    }
    if (doc.contains("curves"))
      for (const json& c : doc.at("curves"))
        rep.curves.push_back({c.at("group").get<std::string>(),
                              c.at("class").get<std::string>(),
                              c.at("threshold").get<double>(),
                              c.at("spec").get<double>(),
                              c.at("sens").get<double>()});
    if (doc.contains("curve_bands"))
      for (const json& b : doc.at("curve_bands"))
        rep.curve_bands.push_back({b.at("class").get<std::string>(),
                                   b.at("threshold").get<double>(),
                                   b.at("spec_p25").get<double>(),
                                   b.at("spec_p50").get<double>(),
                                   b.at("spec_p75").get<double>(),
                                   b.at("sens_p25").get<double>(),
                                   b.at("sens_p50").get<double>(),
                                   b.at("sens_p75").get<double>()});
    if (doc.contains("interclass"))
      for (const json& r : doc.at("interclass"))
        rep.interclass.push_back(
            {r.at("group").get<std::string>(),
             reg_kind_from_string(r.at("kind").get<std::string>()),
             r.at("value").get<double>(), r.at("bound").get<double>(),
             r.at("normalized").get<double>()});
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error,
         std::string("malformed JSON report: ") + e.what());
  }
  return rep;
}

double req_real(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::parse_error, "cannot parse '" + s + "' as a number");
  }
}

std::optional<double> opt_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return req_real(s);
}

std::uint64_t req_u64(const std::string& s) {
  try {
    return static_cast<std::uint64_t>(std::stoull(s));
  } catch (const std::exception&) {
    fail(ErrorKind::parse_error, "cannot parse '" + s + "' as an integer");
  }
}

EvaluationReport parse_csv_impl(const std::string& text) {
  const detail::CsvRecords recs = detail::read_csv_records(text);
  EvaluationReport rep;
  std::string section;
  bool seen_header = false;

  auto meta_set = [&](const std::string& key, const std::string& value) {
    ReportMeta& m = rep.meta;
    if (key == "tool") m.tool = value;
    else if (key == "version") m.version = value;
    else if (key == "dataset") m.dataset = value;
    else if (key == "dataset_digest") m.dataset_digest = value;
    else if (key == "dataset_format") m.dataset_format = value;
    else if (key == "world")
      m.world = value == "closed" ? World::closed : World::open;
    else if (key == "tol_clamp") m.tol_clamp = req_real(value);
    else if (key == "tol_sum") m.tol_sum = req_real(value);
    else if (key == "operators") m.operators = split(value, ';');
    else if (key == "measures") m.measures = split(value, ';');
    else if (key == "regression") m.regression = split(value, ';');
    else if (key == "hardening") m.hardening = value;
    else if (key == "group_by") m.group_by = split(value, ';');
    else if (key == "classes") m.classes = split(value, ';');
    else if (key == "class_prevalence") {
      for (const std::string& p : split(value, ';'))
        m.class_prevalence.push_back(req_real(p));
    } else if (key == "n_samples") m.n_samples = req_u64(value);
    else if (key == "n_groups") m.n_groups = req_u64(value);
    else if (key == "curves") m.curves = value == "true";
    else if (key == "interclass") m.interclass = value == "true";
    else fail(ErrorKind::parse_error, "unknown meta key '" + key + "'");
  };

  for (std::size_t i = 0; i < recs.records.size(); ++i) {
    const auto& rec = recs.records[i];
    if (rec.size() == 1 && !rec[0].empty() && rec[0][0] == '#') {
      section = rec[0];
      seen_header = false;
      continue;
    }
    if (section == "#softval-report v1" || section.empty()) {
      fail(ErrorKind::parse_error, "content before the first section marker");
    }
    if (!seen_header) {  // skip each section's column header row
      seen_header = true;
      continue;
    }
    if (section == "#meta") {
      if (rec.size() != 2)
        fail(ErrorKind::parse_error, "meta rows need exactly key,value");
      meta_set(rec[0], rec[1]);
    } else if (section == "#results") {
      if (rec.size() != 7)
        fail(ErrorKind::parse_error, "results rows need 7 fields");
      ResultRow row;
      row.group = rec[0];
      row.class_name = rec[1];
      row.measure = measure_kind_from_string(rec[2]);
      row.flavor = flavor_from_string(rec[3]);
      row.value = opt_real(rec[4]);
      row.denominator = req_real(rec[5]);
      row.reason = rec[6];
      rep.results.push_back(std::move(row));
    } else if (section == "#statistics") {
      if (rec.size() != 10)
        fail(ErrorKind::parse_error, "statistics rows need 10 fields");
      StatRow row;
      row.class_name = rec[0];
      row.measure = measure_kind_from_string(rec[1]);
      row.flavor = flavor_from_string(rec[2]);
      row.mean = opt_real(rec[3]);
      row.sd = opt_real(rec[4]);
      row.p25 = opt_real(rec[5]);
      row.p50 = opt_real(rec[6]);
      row.p75 = opt_real(rec[7]);
      row.n_groups = req_u64(rec[8]);
      row.n_undefined = req_u64(rec[9]);
      rep.statistics.push_back(std::move(row));
    } else if (section == "#confusion") {
      if (rec.size() != 6)
        fail(ErrorKind::parse_error, "confusion rows need 6 fields");
      // Rows come row-major per (group, operator) block.
      if (rep.confusion.empty() || rep.confusion.back().group != rec[0] ||
          rep.confusion.back().op != rec[1]) {
        ConfusionBlock block;
        block.group = rec[0];
        block.op = rec[1];
        block.n_samples = req_u64(rec[5]);
        rep.confusion.push_back(std::move(block));
      }
      ConfusionBlock& block = rep.confusion.back();
      if (std::find(block.class_names.begin(), block.class_names.end(),
                    rec[3]) == block.class_names.end())
        block.class_names.push_back(rec[3]);
      block.counts.push_back(req_real(rec[4]));
    } else if (section == "#curves") {
      if (rec.size() != 5)
        fail(ErrorKind::parse_error, "curve rows need 5 fields");
      rep.curves.push_back({rec[0], rec[1], req_real(rec[2]),
                            req_real(rec[3]), req_real(rec[4])});
    } else if (section == "#curve_bands") {
      if (rec.size() != 8)
        fail(ErrorKind::parse_error, "curve band rows need 8 fields");
      rep.curve_bands.push_back({rec[0], req_real(rec[1]), req_real(rec[2]),
                                 req_real(rec[3]), req_real(rec[4]),
                                 req_real(rec[5]), req_real(rec[6]),
                                 req_real(rec[7])});
    } else if (section == "#interclass") {
      if (rec.size() != 5)
        fail(ErrorKind::parse_error, "interclass rows need 5 fields");
      rep.interclass.push_back({rec[0], reg_kind_from_string(rec[1]),
                                req_real(rec[2]), req_real(rec[3]),
                                req_real(rec[4])});
    } else {
      fail(ErrorKind::parse_error, "unknown section '" + section + "'");
    }
  }
  for (ConfusionBlock& block : rep.confusion) {
    const std::size_t ng = block.class_names.size();
    if (ng * ng != block.counts.size())
      fail(ErrorKind::parse_error,
           "confusion block for group '" + block.group +
               "' is not a complete square matrix");
  }
  return rep;
}

}  // namespace

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "table") return ReportFormat::table;
  fail(ErrorKind::domain_error,
       "unknown report format '" + std::string(s) + "'");
}

const char* to_string(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::json: return "json";
    case ReportFormat::csv: return "csv";
    default: return "table";
  }
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string emit_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return emit_json(report);
    case ReportFormat::csv: return emit_csv(report);
    default: return emit_table(report);
  }
}

EvaluationReport parse_report_json(const std::string& text) {
  return parse_json_impl(text);
}

EvaluationReport parse_report_csv(const std::string& text) {
  return parse_csv_impl(text);
}

void write_report(const EvaluationReport& report, const std::string& path,
                  ReportFormat format) {
  const std::string text = emit_report(report, format);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io_error, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorKind::io_error, "cannot write '" + path + "'");
}

}  // namespace softval
