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


#ifndef HAF_HIERARCHY_SCORER_H_
#define HAF_HIERARCHY_SCORER_H_

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "haf/core/error.h"
#include "haf/core/review.h"
#include "haf/core/taxonomy.h"
#include "haf/rules/rule_config.h"

namespace haf::hierarchy {

// Per-label scores for one review, aligned with LabelScorer::labels().
using Scores = std::vector<double>;

// Scores a review on a fixed set of labels. Implementations must be safe to
// call from several threads at once.
class LabelScorer {
 public:
  virtual ~LabelScorer() = default;
  virtual std::span<const LabelIndex> labels() const = 0;
  virtual Scores Score(const Review& review) const = 0;
};

// Thrown when a scorer returns the wrong number of scores or a value outside
// [0, 1].
class ScorerError : public Error {
 public:
  using Error::Error;
};

// Calls `scorer` and checks its output.
Scores CheckedScore(const LabelScorer& scorer, const Review& review);

// Rule engine as a scorer: 1.0 for every tagged label, else 0.0. Covers all
// 25 labels. Keeps a reference to `config`.
class RuleScorer : public LabelScorer {
 public:
  explicit RuleScorer(const rules::RuleConfig& config);
  std::span<const LabelIndex> labels() const override { return labels_; }
  Scores Score(const Review& review) const override;

 private:
  const rules::RuleConfig& config_;
  std::vector<LabelIndex> labels_;
};

// Precomputed scores, one JSONL row per review:
//   {"review_id": "r1", "PRICE": 0.93, "PRICE.Affordability": 0.71}
// Declared labels are the union of slugs in the file; a label absent from a
// row scores 0. Scoring an unknown review id throws ValidationError.
class ScoreTableScorer : public LabelScorer {
 public:
  static ScoreTableScorer Load(const std::string& path);
  static ScoreTableScorer Parse(std::string_view jsonl, const std::string& source_name);

  std::span<const LabelIndex> labels() const override { return labels_; }
  Scores Score(const Review& review) const override;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<LabelIndex> labels_;
  std::map<std::string, Scores> rows_;
};

// Adapts a callable.
class FunctionScorer : public LabelScorer {
 public:
  using Fn = std::function<Scores(const Review&)>;
  FunctionScorer(std::vector<LabelIndex> labels, Fn fn)
      : labels_(std::move(labels)), fn_(std::move(fn)) {}
  std::span<const LabelIndex> labels() const override { return labels_; }
  Scores Score(const Review& review) const override { return fn_(review); }

 private:
  std::vector<LabelIndex> labels_;
  Fn fn_;
};

// Wraps another scorer and counts calls.
class CountingScorer : public LabelScorer {
 public:
  explicit CountingScorer(const LabelScorer& inner) : inner_(inner) {}
  std::span<const LabelIndex> labels() const override { return inner_.labels(); }
  Scores Score(const Review& review) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.Score(review);
  }
  long calls() const { return calls_.load(); }
  void reset() { calls_ = 0; }

 private:
  const LabelScorer& inner_;
  mutable std::atomic<long> calls_{0};
};

}  // namespace haf::hierarchy

#endif  // HAF_HIERARCHY_SCORER_H_
