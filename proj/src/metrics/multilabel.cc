// Copyright 2026 The Taglish HAF Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "haf/metrics/multilabel.h"

#include "haf/core/error.h"

namespace haf::metrics {
namespace {

void CheckAligned(std::span<const LabelVector> gold, std::span<const LabelVector> pred) {
  if (gold.empty()) throw ValidationError("metrics need at least one item");
  if (gold.size() != pred.size()) {
    throw ValidationError("gold has " + std::to_string(gold.size()) + " items but pred has " +
                          std::to_string(pred.size()));
  }
}

void CheckLabels(std::span<const LabelIndex> labels) {
  if (labels.empty()) throw ValidationError("metrics need at least one label");
}

}  // namespace

std::string_view to_string(Scope scope) {
  switch (scope) {
    case Scope::kGeneral:
      return "general";
    case Scope::kSpecific:
      return "specific";
    case Scope::kAll:
      return "all";
  }
  return "all";
}

std::optional<Scope> ParseScope(std::string_view name) {
  if (name == "general") return Scope::kGeneral;
  if (name == "specific") return Scope::kSpecific;
  if (name == "all") return Scope::kAll;
  return std::nullopt;
}

std::vector<LabelIndex> LabelsIn(Scope scope) {
  std::vector<LabelIndex> labels;
  LabelIndex begin = scope == Scope::kSpecific ? kNumGenerals : 0;
  LabelIndex end = scope == Scope::kGeneral ? kNumGenerals : kNumLabels;
  for (LabelIndex i = begin; i < end; ++i) labels.push_back(i);
  return labels;
}

Prf PrfFromCounts(const Confusion& c) {
  Prf out;
  if (c.tp + c.fp == 0) {
    out.precision_undefined = true;
  } else {
    out.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn == 0) {
    out.recall_undefined = true;
  } else {
    out.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  // F1 = 2TP / (2TP + FP + FN), the harmonic mean written on counts so it is
  // one rounding away from the exact ratio.
  const std::int64_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) {
    out.f1_undefined = true;
  } else {
    out.f1 = static_cast<double>(2 * c.tp) / static_cast<double>(denom);
  }
  return out;
}

double ExactMatch(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                  std::span<const LabelIndex> labels) {
  CheckAligned(gold, pred);
  CheckLabels(labels);
  std::int64_t matched = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    bool all = true;
    for (LabelIndex l : labels) all = all && gold[i].test(l) == pred[i].test(l);
    matched += all ? 1 : 0;
  }
  return static_cast<double>(matched) / static_cast<double>(gold.size());
}

double ExactMatch(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                  Scope scope) {
  return ExactMatch(gold, pred, LabelsIn(scope));
}

double HammingLoss(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                   std::span<const LabelIndex> labels) {
  CheckAligned(gold, pred);
  CheckLabels(labels);
  std::int64_t mismatched = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (LabelIndex l : labels) mismatched += gold[i].test(l) != pred[i].test(l) ? 1 : 0;
  }
  return static_cast<double>(mismatched) /
         static_cast<double>(gold.size() * labels.size());
}

double HammingLoss(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                   Scope scope) {
  return HammingLoss(gold, pred, LabelsIn(scope));
}

Confusion CountLabel(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                     LabelIndex label) {
  CheckAligned(gold, pred);
  Confusion c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i].test(label);
    const bool p = pred[i].test(label);
    if (g && p) {
      ++c.tp;
    } else if (p) {
      ++c.fp;
    } else if (g) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

PrfSummary PrfPerLabel(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                       std::span<const LabelIndex> labels) {
  CheckAligned(gold, pred);
  CheckLabels(labels);
  PrfSummary out;
  Confusion pooled;
  double f1_sum = 0;
  for (LabelIndex l : labels) {
    LabelPrf row{l, CountLabel(gold, pred, l), {}};
    row.prf = PrfFromCounts(row.counts);
    f1_sum += row.prf.f1;
    pooled += row.counts;
    out.per_label.push_back(row);
  }
  out.macro_f1 = f1_sum / static_cast<double>(labels.size());
  out.micro = PrfFromCounts(pooled);
  return out;
}

PrfSummary PrfPerLabel(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                       Scope scope) {
  return PrfPerLabel(gold, pred, LabelsIn(scope));
}

std::array<CategoryPrf, kNumGenerals> CategoryPrfs(std::span<const LabelVector> gold,
                                                   std::span<const LabelVector> pred) {
  CheckAligned(gold, pred);
  std::array<CategoryPrf, kNumGenerals> out;
  for (int g = 0; g < kNumGenerals; ++g) {
    const auto category = static_cast<General>(g);
    out[g].category = category;
    auto [begin, end] = Taxonomy::children_of(category);
    for (int s = begin; s < end; ++s) out[g].counts += CountLabel(gold, pred, SpecificLabel(s));
    out[g].prf = PrfFromCounts(out[g].counts);
  }
  return out;
}

}  // namespace haf::metrics
