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


#include "haf/hierarchy/predict.h"

#include <cmath>

#include "haf/core/error.h"

namespace haf::hierarchy {
namespace {

void CheckThreshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ValidationError("threshold must lie in [0, 1]");
  }
}

// Sets the labels of `scorer` inside [begin, end) that score >= threshold.
void Apply(const LabelScorer& scorer, const Review& review, LabelIndex begin, LabelIndex end,
           double threshold, LabelVector& out) {
  const Scores scores = CheckedScore(scorer, review);
  const auto labels = scorer.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= begin && labels[i] < end && scores[i] >= threshold) out.set(labels[i]);
  }
}

bool Covers(const LabelScorer* scorer, LabelIndex label) {
  if (scorer == nullptr) return false;
  for (LabelIndex l : scorer->labels()) {
    if (l == label) return true;
  }
  return false;
}

std::pair<LabelIndex, LabelIndex> ChildRange(int g) {
  auto [b, e] = Taxonomy::children_of(static_cast<General>(g));
  return {SpecificLabel(b), SpecificLabel(e)};
}

}  // namespace

ScorerSet ScorerSet::Uniform(const LabelScorer& scorer) {
  ScorerSet set;
  set.general = &scorer;
  set.specific.fill(&scorer);
  return set;
}

void ScorerSet::Validate() const {
  for (int g = 0; g < kNumGenerals; ++g) {
    if (!Covers(general, g)) {
      throw ValidationError("no scorer for label " + std::string(Taxonomy::slug(g)));
    }
    auto [begin, end] = ChildRange(g);
    for (LabelIndex l = begin; l < end; ++l) {
      if (!Covers(specific[g], l)) {
        throw ValidationError("no scorer for label " + std::string(Taxonomy::slug(l)));
      }
    }
  }
}

FlatPrediction PredictFlat(const Review& review, const ScorerSet& scorers, double threshold) {
  CheckThreshold(threshold);
  scorers.Validate();
  FlatPrediction out;
  Apply(*scorers.general, review, 0, kNumGenerals, threshold, out.labels);
  for (int g = 0; g < kNumGenerals; ++g) {
    auto [begin, end] = ChildRange(g);
    Apply(*scorers.specific[g], review, begin, end, threshold, out.labels);
  }
  out.inconsistent = out.labels.inconsistent_count();
  return out;
}

LabelVector PredictHierarchical(const Review& review, const ScorerSet& scorers, double threshold,
                                const LabelVector* gold_gate) {
  CheckThreshold(threshold);
  scorers.Validate();
  LabelVector out;
  if (gold_gate != nullptr) {
    for (int g = 0; g < kNumGenerals; ++g) out.set(g, gold_gate->test(g));
  } else {
    Apply(*scorers.general, review, 0, kNumGenerals, threshold, out);
  }
  for (int g = 0; g < kNumGenerals; ++g) {
    if (!out.test(g)) continue;
    auto [begin, end] = ChildRange(g);
    Apply(*scorers.specific[g], review, begin, end, threshold, out);
  }
  return out;
}

nlohmann::ordered_json ClassWeights::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "haf.class_weights";
  j["n"] = n;
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    nlohmann::ordered_json row;
    row["weight"] = weight[i];
    row["positives"] = positives[i];
    row["clamped"] = clamped[i];
    labels[std::string(Taxonomy::slug(i))] = row;
  }
  j["labels"] = labels;
  return j;
}

ClassWeights InverseFrequencyWeights(std::span<const LabelVector> corpus_labels) {
  if (corpus_labels.empty()) throw ValidationError("class weights need a non-empty corpus");
  ClassWeights w;
  w.n = corpus_labels.size();
  for (const auto& v : corpus_labels) {
    for (LabelIndex i = 0; i < kNumLabels; ++i) w.positives[i] += v.test(i) ? 1 : 0;
  }
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    w.clamped[i] = w.positives[i] == 0;
    w.weight[i] = static_cast<double>(w.n) /
                  static_cast<double>(w.positives[i] == 0 ? 1 : w.positives[i]);
  }
  return w;
}

}  // namespace haf::hierarchy
