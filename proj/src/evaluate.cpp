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
#include "softval/evaluate.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include "softval/confusion.hpp"
#include "softval/numeric.hpp"
#include "softval/version.hpp"

namespace softval {

namespace {

template <typename T>
std::vector<T> canonical(std::vector<T> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::string undefined_reason(const MeasureResult& r) {
  return r.defined() ? "" : "zero denominator";
}

// Re-raises an inner error with the group key prefixed to the message.
[[noreturn]] void rethrow_for_group(const Error& e, const std::string& key) {
  std::string message = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  throw Error(e.kind(), "group '" + key + "': " + message);
}

struct GroupOutput {
  std::vector<ResultRow> results;
  std::vector<ConfusionBlock> confusion;
  std::vector<CurveRow> curves;
  std::vector<InterclassRow> interclass;
};

}  // namespace

EvaluationReport run_evaluation(const GroupedPredictions& gp,
                                const EvalConfig& config,
                                const DatasetInfo& info) {
  const std::vector<std::string>& all_classes = gp.class_names();

  // Canonical orders keep reports reproducible regardless of how the
  // configuration lists were spelled.
  const std::vector<AndKind> operators = canonical(config.operators);
  const std::vector<MeasureKind> measures = canonical(config.measures);
  const std::vector<RegKind> regression = canonical(config.regression);

  std::vector<std::size_t> class_indices;
  std::vector<std::string> class_names;
  if (config.classes.empty()) {
    for (std::size_t g = 0; g < all_classes.size(); ++g) {
      class_indices.push_back(g);
      class_names.push_back(all_classes[g]);
    }
  } else {
    for (const std::string& name : config.classes) {
      class_indices.push_back(gp.group(0).ref.class_index(name));
      class_names.push_back(name);
    }
  }

  std::vector<Flavor> flavors;
  for (AndKind op : operators) flavors.push_back(to_flavor(op));
  if (config.hardening) flavors.push_back(Flavor::crisp);
  for (RegKind reg : regression) flavors.push_back(to_flavor(reg));

  const bool have_values = !measures.empty();

  EvaluationReport rep;
  ReportMeta& meta = rep.meta;
  meta.version = version;
  meta.dataset = info.path;
  meta.dataset_digest = info.digest_hex;
  meta.dataset_format = to_string(info.format);
  meta.world = info.world;
  meta.tol_clamp = info.tol.clamp;
  meta.tol_sum = info.tol.row_sum;
  for (AndKind op : operators) meta.operators.emplace_back(to_string(op));
  for (MeasureKind m : measures) meta.measures.emplace_back(to_string(m));
  for (RegKind r : regression) meta.regression.emplace_back(to_string(r));
  if (config.hardening) {
    meta.hardening =
        config.hardening->kind == HardeningRule::Kind::winner_takes_all
            ? "wta"
            : "threshold=" + format_real(config.hardening->threshold);
  }
  meta.group_by = info.group_by;
  meta.classes = class_names;
  meta.n_samples = gp.total_samples();
  meta.n_groups = gp.size();
  meta.curves = config.curves;
  meta.interclass = config.interclass;

  // Pooled reference prevalence per reported class.
  {
    const double total = static_cast<double>(gp.total_samples());
    for (std::size_t cls : class_indices) {
      NeumaierSum acc;
      for (const auto& group : gp.groups())
        for (std::size_t i = 0; i < group.ref.rows(); ++i)
          acc.add(group.ref.at(i, cls));
      meta.class_prevalence.push_back(acc.value() / total);
    }
  }

  // Per-group evaluation; groups are independent. Results land in
  // preallocated slots so the parallel schedule cannot reorder output.
  std::vector<GroupOutput> outputs(gp.size());
  std::exception_ptr group_error;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t gi = 0; gi < static_cast<std::ptrdiff_t>(gp.size());
       ++gi) {
    const auto& group = gp.group(static_cast<std::size_t>(gi));
    try {
      GroupOutput& out = outputs[static_cast<std::size_t>(gi)];

      std::optional<MembershipMatrix> hardened;
      if (config.hardening && have_values)
        hardened = harden(group.pred, *config.hardening);

      if (have_values) {
        for (AndKind op : operators) {
          const ConfusionMatrix cm = build(group.ref, group.pred, op);
          ConfusionBlock block;
          block.group = group.key;
          block.op = to_string(op);
          block.n_samples = cm.n_samples();
          block.class_names = cm.class_names();
          block.counts.assign(cm.counts().begin(), cm.counts().end());
          out.confusion.push_back(std::move(block));
        }
      }

      for (std::size_t c = 0; c < class_indices.size(); ++c) {
        const std::size_t cls = class_indices[c];
        for (MeasureKind kind : measures) {
          for (AndKind op : operators) {
            MeasureResult r = measure(kind, group.ref, group.pred, cls, op);
            out.results.push_back({group.key, r.class_name, kind, to_flavor(op),
                                   r.value, r.denominator,
                                   undefined_reason(r)});
          }
          if (hardened) {
            MeasureResult r =
                measure(kind, group.ref, *hardened, cls, AndKind::product);
            out.results.push_back({group.key, r.class_name, kind,
                                   Flavor::crisp, r.value, r.denominator,
                                   undefined_reason(r)});
          }
          for (RegKind reg : regression) {
            MeasureResult r =
                regression_measure(kind, reg, group.ref, group.pred, cls);
            out.results.push_back({group.key, r.class_name, kind,
                                   to_flavor(reg), r.value, r.denominator,
                                   undefined_reason(r)});
          }
        }

        if (config.curves) {
          const auto curve = spec_sens_curve(group.ref, group.pred, cls, {},
                                             config.curve_soft_rows);
          for (const CurvePoint& pt : curve)
            out.curves.push_back({group.key, all_classes[cls], pt.threshold,
                                  pt.spec, pt.sens});
        }
      }

      if (config.interclass) {
        for (RegKind kind : {RegKind::mae, RegKind::rmse}) {
          const double value =
              interclass_error(group.ref, group.pred, kind, false);
          const World world = (group.ref.world() == World::closed &&
                               group.pred.world() == World::closed)
                                  ? World::closed
                                  : World::open;
          const double bound =
              interclass_error_bound(world, kind, all_classes.size());
          out.interclass.push_back(
              {group.key, kind, value, bound, value / bound});
        }
      }
    } catch (const Error& e) {
#pragma omp critical
      if (!group_error) {
        try {
          rethrow_for_group(e, group.key);
        } catch (...) {
          group_error = std::current_exception();
        }
      }
    } catch (...) {
#pragma omp critical
      if (!group_error) group_error = std::current_exception();
    }
  }
  if (group_error) std::rethrow_exception(group_error);

  for (GroupOutput& out : outputs) {
    rep.results.insert(rep.results.end(), out.results.begin(),
                       out.results.end());
    rep.confusion.insert(rep.confusion.end(), out.confusion.begin(),
                         out.confusion.end());
    rep.curves.insert(rep.curves.end(), out.curves.begin(), out.curves.end());
    rep.interclass.insert(rep.interclass.end(), out.interclass.begin(),
                          out.interclass.end());
  }

  // Cross-group statistics per (class, measure, flavor), in report order.
  if (have_values) {
    for (std::size_t c = 0; c < class_indices.size(); ++c) {
      for (MeasureKind kind : measures) {
        for (Flavor flavor : flavors) {
          std::vector<std::optional<double>> values;
          for (const GroupOutput& out : outputs)
            for (const ResultRow& row : out.results)
              if (row.class_name == class_names[c] && row.measure == kind &&
                  row.flavor == flavor)
                values.push_back(row.value);
          const GroupStatistics st = summarize_values(values);
          StatRow row;
          row.class_name = class_names[c];
          row.measure = kind;
          row.flavor = flavor;
          row.mean = st.mean;
          row.sd = st.sd;
          row.p25 = st.p25;
          row.p50 = st.p50;
          row.p75 = st.p75;
          row.n_groups = st.n_defined;
          row.n_undefined = st.n_undefined;
          rep.statistics.push_back(std::move(row));
        }
      }
    }
  }

  // Percentile bands over a shared threshold grid (the union of every
  // group's thresholds per class), evaluated by rebuilding each group's step
  // curve on that grid.
  if (config.curves) {
    for (std::size_t c = 0; c < class_indices.size(); ++c) {
      const std::size_t cls = class_indices[c];
      std::set<double> grid_set;
      for (const CurveRow& row : rep.curves)
        if (row.class_name == all_classes[cls]) grid_set.insert(row.threshold);
      const std::vector<double> grid(grid_set.begin(), grid_set.end());
      if (grid.empty()) continue;

      std::vector<std::vector<CurvePoint>> per_group;
      per_group.reserve(gp.size());
      for (const auto& group : gp.groups()) {
        try {
          per_group.push_back(spec_sens_curve(group.ref, group.pred, cls,
                                              grid, config.curve_soft_rows));
        } catch (const Error& e) {
          rethrow_for_group(e, group.key);
        }
      }

      for (std::size_t t = 0; t < grid.size(); ++t) {
        std::vector<double> specs, senss;
        for (const auto& curve : per_group) {
          specs.push_back(curve[t].spec);
          senss.push_back(curve[t].sens);
        }
        BandRow band;
        band.class_name = all_classes[cls];
        band.threshold = grid[t];
        band.spec_p25 = stats::percentile(specs, 0.25);
        band.spec_p50 = stats::percentile(specs, 0.50);
        band.spec_p75 = stats::percentile(specs, 0.75);
        band.sens_p25 = stats::percentile(senss, 0.25);
        band.sens_p50 = stats::percentile(senss, 0.50);
        band.sens_p75 = stats::percentile(senss, 0.75);
        rep.curve_bands.push_back(std::move(band));
      }
    }
  }

  return rep;
}

}  // namespace softval
