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


#ifndef HAF_HIERARCHY_PREDICT_H_
#define HAF_HIERARCHY_PREDICT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/hierarchy/scorer.h"
#include "json.hpp"

namespace haf::hierarchy {

inline constexpr double kDefaultThreshold = 0.5;

// One scorer for the four generals and one per general for its children.
// Scorers are borrowed. A scorer may declare more labels than its slot needs;
// the extra ones are ignored.
struct ScorerSet {
  const LabelScorer* general = nullptr;
  std::array<const LabelScorer*, kNumGenerals> specific{};

  // Same scorer in every slot.
  static ScorerSet Uniform(const LabelScorer& scorer);

  // Throws ValidationError naming the first label no slot covers.
  void Validate() const;
};

struct FlatPrediction {
  LabelVector labels;
  // Specifics set under a clear parent. Reported, not repaired.
  int inconsistent = 0;
};

// Every label thresholded on its own (score >= threshold). Invokes every
// scorer once.
FlatPrediction PredictFlat(const Review& review, const ScorerSet& scorers,
                           double threshold = kDefaultThreshold);

// Stage one thresholds the generals; stage two runs only the specific
// scorers whose general fired. When `gold_gate` is given its generals replace
// stage one and the general scorer is not called.
LabelVector PredictHierarchical(const Review& review, const ScorerSet& scorers,
                                double threshold = kDefaultThreshold,
                                const LabelVector* gold_gate = nullptr);

// Per-label positive-class weights N / max(1, positives).
struct ClassWeights {
  std::size_t n = 0;
  std::array<double, kNumLabels> weight{};
  std::array<std::int64_t, kNumLabels> positives{};
  // No positives: weight clamped to N.
  std::array<bool, kNumLabels> clamped{};

  nlohmann::ordered_json to_json() const;
};

// Throws ValidationError on an empty corpus.
ClassWeights InverseFrequencyWeights(std::span<const LabelVector> corpus_labels);

}  // namespace haf::hierarchy

#endif  // HAF_HIERARCHY_PREDICT_H_
