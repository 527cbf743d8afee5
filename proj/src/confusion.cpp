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
#include "softval/confusion.hpp"

#include "softval/numeric.hpp"
#include "softval/parallel.hpp"

namespace softval {

namespace {

void check_same_layout(const MembershipMatrix& ref,
                       const MembershipMatrix& pred) {
  if (ref.rows() != pred.rows())
    fail(ErrorKind::shape_mismatch,
         "reference has " + std::to_string(ref.rows()) +
             " rows, prediction has " + std::to_string(pred.rows()));
  if (ref.class_names() != pred.class_names())
    fail(ErrorKind::class_name_mismatch,
         "reference and prediction class names differ");
}

struct CellPartial {
  std::vector<NeumaierSum> cells;
};

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<double> counts,
                                 std::vector<std::string> class_names,
                                 std::size_t n_samples, ConfusionTag tag)
    : counts_(std::move(counts)),
      class_names_(std::move(class_names)),
      n_samples_(n_samples),
      tag_(tag) {
  if (counts_.size() != class_names_.size() * class_names_.size())
    fail(ErrorKind::shape_error, "confusion counts must be n_g x n_g");
  for (double c : counts_)
    if (!(c >= 0.0))
      fail(ErrorKind::shape_error, "confusion counts must be non-negative");
}

ConfusionMatrix build(const MembershipMatrix& ref, const MembershipMatrix& pred,
                      AndKind op) {
  check_same_layout(ref, pred);
  const std::size_t n = ref.rows();
  const std::size_t ng = ref.classes();

  auto partials = par::map_blocks<CellPartial>(
      n, [&](std::size_t, std::size_t lo, std::size_t hi, CellPartial& out) {
        out.cells.resize(ng * ng);
        for (std::size_t i = lo; i < hi; ++i) {
          const std::span<const double> r = ref.row(i);
          const std::span<const double> p = pred.row(i);
          for (std::size_t gi = 0; gi < ng; ++gi) {
            const double ri = r[gi];
            for (std::size_t gj = 0; gj < ng; ++gj)
              out.cells[gi * ng + gj].add(detail::zf(op, ri, p[gj]));
          }
        }
      });

  std::vector<NeumaierSum> total(ng * ng);
  for (const CellPartial& part : partials)
    for (std::size_t c = 0; c < ng * ng; ++c) total[c].merge(part.cells[c]);

  std::vector<double> counts(ng * ng);
  for (std::size_t c = 0; c < ng * ng; ++c)
    counts[c] = std::max(0.0, total[c].value());
  return ConfusionMatrix(std::move(counts), ref.class_names(), n, to_tag(op));
}

ConfusionMatrix build_serial(const MembershipMatrix& ref,
                             const MembershipMatrix& pred, AndKind op) {
  check_same_layout(ref, pred);
  const std::size_t n = ref.rows();
  const std::size_t ng = ref.classes();

  std::vector<NeumaierSum> total(ng * ng);
  for (std::size_t i = 0; i < n; ++i) {
    const std::span<const double> r = ref.row(i);
    const std::span<const double> p = pred.row(i);
    for (std::size_t gi = 0; gi < ng; ++gi)
      for (std::size_t gj = 0; gj < ng; ++gj)
        total[gi * ng + gj].add(detail::zf(op, r[gi], p[gj]));
  }

  std::vector<double> counts(ng * ng);
  for (std::size_t c = 0; c < ng * ng; ++c)
    counts[c] = std::max(0.0, total[c].value());
  return ConfusionMatrix(std::move(counts), ref.class_names(), n, to_tag(op));
}

ConfusionMatrix pool(std::span<const ConfusionMatrix> parts) {
  if (parts.empty())
    fail(ErrorKind::shape_error, "cannot pool an empty list of matrices");
  const ConfusionMatrix& first = parts.front();
  const std::size_t ng = first.classes();

  std::vector<NeumaierSum> total(ng * ng);
  std::size_t n_samples = 0;
  for (const ConfusionMatrix& cm : parts) {
    if (cm.tag() != first.tag())
      fail(ErrorKind::mixed_operator,
           std::string("cannot pool '") + to_string(cm.tag()) + "' counts with '" +
               to_string(first.tag()) + "' counts");
    if (cm.class_names() != first.class_names())
      fail(ErrorKind::class_name_mismatch,
           "pooled matrices must share class names");
    for (std::size_t c = 0; c < ng * ng; ++c) total[c].add(cm.counts()[c]);
    n_samples += cm.n_samples();
  }

  std::vector<double> counts(ng * ng);
  for (std::size_t c = 0; c < ng * ng; ++c)
    counts[c] = std::max(0.0, total[c].value());
  return ConfusionMatrix(std::move(counts), first.class_names(), n_samples,
                         first.tag());
}

std::pair<ConfusionMatrix, ConfusionMatrix> recombine_opt_pess(
    const ConfusionMatrix& weak, const ConfusionMatrix& strong) {
  if (weak.tag() != ConfusionTag::weak || strong.tag() != ConfusionTag::strong)
    fail(ErrorKind::mixed_provenance,
         "recombination expects a weak and a strong matrix");
  if (weak.class_names() != strong.class_names())
    fail(ErrorKind::mixed_provenance,
         "weak and strong matrices must share class names");
  if (weak.n_samples() != strong.n_samples())
    fail(ErrorKind::mixed_provenance,
         "weak and strong matrices must come from the same samples");

  const std::size_t ng = weak.classes();
  std::vector<double> opt(ng * ng);
  std::vector<double> pess(ng * ng);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < ng; ++j) {
      opt[i * ng + j] = i == j ? weak.at(i, j) : strong.at(i, j);
      pess[i * ng + j] = i == j ? strong.at(i, j) : weak.at(i, j);
    }
  return {ConfusionMatrix(std::move(opt), weak.class_names(), weak.n_samples(),
                          ConfusionTag::opt),
          ConfusionMatrix(std::move(pess), weak.class_names(),
                          weak.n_samples(), ConfusionTag::pess)};
}

Marginals marginals(const ConfusionMatrix& cm) {
  const std::size_t ng = cm.classes();
  Marginals m;
  m.row_sums.assign(ng, 0.0);
  m.col_sums.assign(ng, 0.0);
  NeumaierSum total;
  for (std::size_t i = 0; i < ng; ++i) {
    NeumaierSum row;
    for (std::size_t j = 0; j < ng; ++j) row.add(cm.at(i, j));
    m.row_sums[i] = row.value();
  }
  for (std::size_t j = 0; j < ng; ++j) {
    NeumaierSum col;
    for (std::size_t i = 0; i < ng; ++i) col.add(cm.at(i, j));
    m.col_sums[j] = col.value();
  }
  for (double c : cm.counts()) total.add(c);
  m.total = total.value();
  return m;
}

}  // namespace softval
