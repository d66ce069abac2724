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


#include "haf/hierarchy/scorer.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "haf/rules/tagger.h"
#include "json.hpp"

namespace haf::hierarchy {

Scores CheckedScore(const LabelScorer& scorer, const Review& review) {
  Scores scores = scorer.Score(review);
  if (scores.size() != scorer.labels().size()) {
    throw ScorerError("scorer returned " + std::to_string(scores.size()) + " scores for " +
                      std::to_string(scorer.labels().size()) + " labels");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]) || scores[i] < 0.0 || scores[i] > 1.0) {
      throw ScorerError("score for " + std::string(Taxonomy::slug(scorer.labels()[i])) +
                        " outside [0, 1] on review '" + review.id + "'");
    }
  }
  return scores;
}

RuleScorer::RuleScorer(const rules::RuleConfig& config) : config_(config) {
  for (LabelIndex i = 0; i < kNumLabels; ++i) labels_.push_back(i);
}

Scores RuleScorer::Score(const Review& review) const {
  const auto labels = rules::TagReview(review, config_).labels;
  Scores out(kNumLabels);
  for (LabelIndex i = 0; i < kNumLabels; ++i) out[i] = labels.test(i) ? 1.0 : 0.0;
  return out;
}

ScoreTableScorer ScoreTableScorer::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read score table '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

ScoreTableScorer ScoreTableScorer::Parse(std::string_view jsonl, const std::string& source) {
  std::map<std::string, std::map<LabelIndex, double>> raw;
  std::set<LabelIndex> declared;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw ValidationError(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (pos <= jsonl.size()) {
    std::size_t nl = jsonl.find('\n', pos);
    if (nl == std::string_view::npos) nl = jsonl.size();
    std::string_view line = jsonl.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!row.is_object()) fail("row is not an object");
    auto id = row.find("review_id");
    if (id == row.end() || !id->is_string()) fail("missing string 'review_id'");
    auto [it, inserted] = raw.try_emplace(id->get<std::string>());
    if (!inserted) fail("duplicate review_id '" + it->first + "'");
    for (const auto& [key, value] : row.items()) {
      if (key == "review_id") continue;
      auto label = Taxonomy::find(key);
      if (!label) fail("unknown label '" + key + "'");
      if (!value.is_number()) fail("non-numeric score for '" + key + "'");
      const double score = value.get<double>();
      if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
        fail("score for '" + key + "' outside [0, 1]");
      }
      it->second[*label] = score;
      declared.insert(*label);
    }
  }
  ScoreTableScorer out;
  out.labels_.assign(declared.begin(), declared.end());
  for (auto& [review_id, scores] : raw) {
    Scores aligned(out.labels_.size(), 0.0);
    for (std::size_t i = 0; i < out.labels_.size(); ++i) {
      auto hit = scores.find(out.labels_[i]);
      if (hit != scores.end()) aligned[i] = hit->second;
    }
    out.rows_.emplace(review_id, std::move(aligned));
  }
  return out;
}

Scores ScoreTableScorer::Score(const Review& review) const {
  auto it = rows_.find(review.id);
  if (it == rows_.end()) throw ValidationError("no scores for review '" + review.id + "'");
  return it->second;
}

}  // namespace haf::hierarchy
