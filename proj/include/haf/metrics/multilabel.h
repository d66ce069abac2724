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

#ifndef HAF_METRICS_MULTILABEL_H_
#define HAF_METRICS_MULTILABEL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "haf/core/label_vector.h"

namespace haf::metrics {

// Which labels a metric looks at.
enum class Scope { kGeneral, kSpecific, kAll };

std::string_view to_string(Scope scope);
std::optional<Scope> ParseScope(std::string_view name);

// Flat label indices of a scope, in canonical order.
std::vector<LabelIndex> LabelsIn(Scope scope);

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  Confusion& operator+=(const Confusion& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

// Precision, recall and F1 with the zero-division convention: a term whose
// denominator is zero is reported as 0 and flagged undefined.
struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

Prf PrfFromCounts(const Confusion& c);

struct LabelPrf {
  LabelIndex label = 0;
  Confusion counts;
  Prf prf;
};

struct PrfSummary {
  std::vector<LabelPrf> per_label;
  // Unweighted mean of per-label F1.
  double macro_f1 = 0;
  // PRF of the pooled counts.
  Prf micro;
};

// All functions below take aligned gold/pred lists and throw ValidationError
// when the lists are empty or of different lengths.

// Fraction of items whose vectors agree on every label in `labels`.
double ExactMatch(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                  std::span<const LabelIndex> labels);
double ExactMatch(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                  Scope scope);

// Mismatched (item, label) cells over n_items * n_labels.
double HammingLoss(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                   std::span<const LabelIndex> labels);
double HammingLoss(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                   Scope scope);

Confusion CountLabel(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                     LabelIndex label);

PrfSummary PrfPerLabel(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                       std::span<const LabelIndex> labels);
PrfSummary PrfPerLabel(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                       Scope scope);

struct CategoryPrf {
  General category = General::kProduct;
  Confusion counts;
  Prf prf;
};

// Per general category, pools the counts of its child specifics and
// computes PRF from the pooled counts.
std::array<CategoryPrf, kNumGenerals> CategoryPrfs(std::span<const LabelVector> gold,
                                                   std::span<const LabelVector> pred);

}  // namespace haf::metrics

#endif  // HAF_METRICS_MULTILABEL_H_
