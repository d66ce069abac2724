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


#ifndef HAF_METRICS_FLEISS_H_
#define HAF_METRICS_FLEISS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "haf/core/label_vector.h"

namespace haf::metrics {

// Fleiss' kappa from an items x categories count matrix. Every row must sum to
// the same n >= 2. Returns exactly 1.0 when observed agreement is perfect.
// Throws ValidationError on empty, ragged or negative input.
double FleissKappa(const std::vector<std::vector<int>>& counts);

// Same statistic from an items x annotators matrix of category ids in [0, k).
double FleissKappaFromRatings(const std::vector<std::vector<int>>& ratings, int k);

struct LabelKappa {
  LabelIndex label = 0;
  double kappa = 0;
};

struct MultiLabelAgreement {
  std::vector<LabelKappa> per_label;
  // Unweighted mean of per_label.
  double mean = 0;
  std::size_t n_items = 0;
  std::size_t n_annotators = 0;
};

// Multi-label reduction: each label is a two-category (absent, present)
// rating, scored with FleissKappa. items[i] holds one vector per annotator and
// every item needs the same number (>= 2) of annotators.
MultiLabelAgreement MultiLabelFleiss(const std::vector<std::vector<LabelVector>>& items,
                                     std::span<const LabelIndex> labels);

}  // namespace haf::metrics

#endif  // HAF_METRICS_FLEISS_H_
