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


#include "haf/corpus/align.h"

#include <set>

namespace haf::corpus {
namespace {

// Shared id checks. Returns the pred entry for each gold entry.
std::vector<const Entry*> Join(const Corpus& gold, const Corpus& pred) {
  std::vector<RowIssue> issues;
  std::set<std::string> gold_ids;
  for (const auto& e : gold.entries()) {
    if (!gold_ids.insert(e.review.id).second) {
      issues.push_back({0, e.review.id, "duplicate id in gold"});
    }
  }
  std::set<std::string> pred_ids;
  for (const auto& e : pred.entries()) {
    if (!pred_ids.insert(e.review.id).second) {
      issues.push_back({0, e.review.id, "duplicate id in predictions"});
    } else if (!gold_ids.count(e.review.id)) {
      issues.push_back({0, e.review.id, "prediction for an id not in gold"});
    }
  }
  std::vector<const Entry*> out;
  for (const auto& e : gold.entries()) {
    const Entry* p = pred.find(e.review.id);
    if (p == nullptr) issues.push_back({0, e.review.id, "no prediction"});
    out.push_back(p);
  }
  if (!issues.empty()) throw CorpusError("gold/pred alignment", std::move(issues));
  return out;
}

}  // namespace

AlignedLabels AlignLabels(const Corpus& gold, const Corpus& pred) {
  auto joined = Join(gold, pred);
  std::vector<RowIssue> issues;
  AlignedLabels out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Entry& g = gold[i];
    if (!g.gold) issues.push_back({0, g.review.id, "gold entry has no labels"});
    if (!joined[i]->gold) issues.push_back({0, g.review.id, "prediction has no labels"});
    if (!g.gold || !joined[i]->gold) continue;
    out.ids.push_back(g.review.id);
    out.gold.push_back(*g.gold);
    out.pred.push_back(*joined[i]->gold);
  }
  if (!issues.empty()) throw CorpusError("gold/pred alignment", std::move(issues));
  return out;
}

AlignedSpans AlignSpans(const Corpus& gold, const Corpus& pred) {
  auto joined = Join(gold, pred);
  AlignedSpans out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    out.ids.push_back(gold[i].review.id);
    out.gold.push_back(gold[i].spans.value_or(std::vector<AspectSpan>{}));
    out.pred.push_back(joined[i]->spans.value_or(std::vector<AspectSpan>{}));
  }
  return out;
}

}  // namespace haf::corpus
