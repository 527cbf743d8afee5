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
#include "softval/measures.hpp"

#include "softval/numeric.hpp"
#include "softval/parallel.hpp"

namespace softval {

namespace {

// Strided view of one class column, optionally negated on the fly.
struct ColView {
  const double* data = nullptr;
  std::size_t stride = 1;
  bool negate = false;

  double operator[](std::size_t i) const noexcept {
    const double v = data[i * stride];
    return negate ? 1.0 - v : v;
  }
};

struct RatioPartial {
  NeumaierSum num;
  NeumaierSum den;
};

MeasureResult ratio_from_sums(double num, double den, MeasureKind kind,
                              AndKind op, std::string class_name) {
  MeasureResult res;
  res.measure = kind;
  res.flavor = to_flavor(op);
  res.class_name = std::move(class_name);
  res.denominator = den;
  if (den > 0.0) res.value = num / den;
  return res;
}

MeasureResult ratio_measure(ColView a, ColView b, std::size_t n, AndKind op,
                            MeasureKind kind, std::string class_name) {
  auto partials = par::map_blocks<RatioPartial>(
      n, [&](std::size_t, std::size_t lo, std::size_t hi, RatioPartial& out) {
        for (std::size_t i = lo; i < hi; ++i) {
          const double av = a[i];
          out.num.add(detail::zf(op, av, b[i]));
          out.den.add(av);
        }
      });
  NeumaierSum num, den;
  for (const RatioPartial& part : partials) {
    num.merge(part.num);
    den.merge(part.den);
  }
  return ratio_from_sums(num.value(), den.value(), kind, op,
                         std::move(class_name));
}

void check_pair(const MembershipMatrix& ref, const MembershipMatrix& pred,
                std::size_t cls) {
  if (ref.rows() != pred.rows())
    fail(ErrorKind::length_mismatch,
         "reference has " + std::to_string(ref.rows()) +
             " rows, prediction has " + std::to_string(pred.rows()));
  if (ref.class_names() != pred.class_names())
    fail(ErrorKind::class_name_mismatch,
         "reference and prediction class names differ");
  if (cls >= ref.classes())
    fail(ErrorKind::unknown_class,
         "class index " + std::to_string(cls) + " out of range");
}

}  // namespace

MeasureKind measure_kind_from_string(std::string_view s) {
  if (s == "sens") return MeasureKind::sens;
  if (s == "spec") return MeasureKind::spec;
  if (s == "ppv") return MeasureKind::ppv;
  if (s == "npv") return MeasureKind::npv;
  fail(ErrorKind::domain_error, "unknown measure '" + std::string(s) + "'");
}

Flavor flavor_from_string(std::string_view s) {
  if (s == "strong") return Flavor::strong;
  if (s == "product") return Flavor::product;
  if (s == "weak") return Flavor::weak;
  if (s == "crisp") return Flavor::crisp;
  if (s == "mae") return Flavor::mae;
  if (s == "rmse") return Flavor::rmse;
  fail(ErrorKind::domain_error, "unknown flavor '" + std::string(s) + "'");
}

MeasureResult base_sens(std::span<const double> ref_col,
                        std::span<const double> pred_col, AndKind op) {
  if (ref_col.size() != pred_col.size())
    fail(ErrorKind::length_mismatch,
         "reference and prediction columns differ in length");
  for (double v : ref_col) detail::check_membership(v, "reference");
  for (double v : pred_col) detail::check_membership(v, "prediction");
  return ratio_measure(ColView{ref_col.data(), 1, false},
                       ColView{pred_col.data(), 1, false}, ref_col.size(), op,
                       MeasureKind::sens, "");
}

MeasureResult base_sens_serial(std::span<const double> ref_col,
                               std::span<const double> pred_col, AndKind op) {
  if (ref_col.size() != pred_col.size())
    fail(ErrorKind::length_mismatch,
         "reference and prediction columns differ in length");
  NeumaierSum num, den;
  for (std::size_t i = 0; i < ref_col.size(); ++i) {
    detail::check_membership(ref_col[i], "reference");
    detail::check_membership(pred_col[i], "prediction");
    num.add(detail::zf(op, ref_col[i], pred_col[i]));
    den.add(ref_col[i]);
  }
  return ratio_from_sums(num.value(), den.value(), MeasureKind::sens, op, "");
}

MeasureResult measure(MeasureKind kind, const MembershipMatrix& ref,
                      const MembershipMatrix& pred, std::size_t cls,
                      AndKind op) {
  check_pair(ref, pred, cls);
  const std::size_t ng = ref.classes();
  const double* rbase = ref.data().data() + cls;
  const double* pbase = pred.data().data() + cls;

  ColView a, b;
  switch (kind) {
    case MeasureKind::sens:
      a = {rbase, ng, false};
      b = {pbase, ng, false};
      break;
    case MeasureKind::spec:
      a = {rbase, ng, true};
      b = {pbase, ng, true};
      break;
    case MeasureKind::ppv:
      a = {pbase, ng, false};
      b = {rbase, ng, false};
      break;
    case MeasureKind::npv:
      a = {pbase, ng, true};
      b = {rbase, ng, true};
      break;
  }
  MeasureResult res =
      ratio_measure(a, b, ref.rows(), op, kind, ref.class_names()[cls]);
  return res;
}

MeasureResult sens(const MembershipMatrix& ref, const MembershipMatrix& pred,
                   std::size_t cls, AndKind op) {
  return measure(MeasureKind::sens, ref, pred, cls, op);
}

MeasureResult spec(const MembershipMatrix& ref, const MembershipMatrix& pred,
                   std::size_t cls, AndKind op) {
  return measure(MeasureKind::spec, ref, pred, cls, op);
}

MeasureResult ppv(const MembershipMatrix& ref, const MembershipMatrix& pred,
                  std::size_t cls, AndKind op) {
  return measure(MeasureKind::ppv, ref, pred, cls, op);
}

MeasureResult npv(const MembershipMatrix& ref, const MembershipMatrix& pred,
                  std::size_t cls, AndKind op) {
  return measure(MeasureKind::npv, ref, pred, cls, op);
}

MeasureResult ideal(MeasureKind kind, const MembershipMatrix& ref,
                    std::size_t cls, AndKind op) {
  return measure(kind, ref, ref, cls, op);
}

MeasureResult weighted_average(std::span<const MeasureResult> parts) {
  if (parts.empty())
    fail(ErrorKind::mixed_measure, "cannot average an empty list of results");
  const MeasureResult& first = parts.front();
  NeumaierSum num, den;
  for (const MeasureResult& part : parts) {
    if (part.measure != first.measure || part.flavor != first.flavor ||
        part.class_name != first.class_name)
      fail(ErrorKind::mixed_measure,
           "averaged results must agree on measure, flavor, and class");
    if (part.denominator < 0.0)
      fail(ErrorKind::domain_error, "denominators must be non-negative");
    if (part.defined()) {
      num.add(*part.value * part.denominator);
      den.add(part.denominator);
    }
  }
  MeasureResult res;
  res.measure = first.measure;
  res.flavor = first.flavor;
  res.class_name = first.class_name;
  res.denominator = den.value();
  if (res.denominator > 0.0) res.value = num.value() / res.denominator;
  return res;
}

}  // namespace softval
