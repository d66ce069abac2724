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

#ifndef HAF_RULES_TAGGER_H_
#define HAF_RULES_TAGGER_H_

#include <span>
#include <string>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "haf/rules/rule_config.h"
#include "json.hpp"

namespace haf::rules {

// One tag produced by a lexicon entry or disambiguation rule. The span is in
// original-text code points and its category is the parent of `specific`.
struct RuleMatch {
  AspectSpan span;
  int specific = 0;
  std::string rule_id;

  nlohmann::ordered_json to_json() const;
  friend bool operator==(const RuleMatch&, const RuleMatch&) = default;
};

// Every word-boundary occurrence of every entry, one match per target,
// ordered by (start, entry order, target order).
std::vector<RuleMatch> MatchLexicon(const Review& review, std::span<const LexiconEntry> lexicon);
std::vector<RuleMatch> MatchLexicon(const PreparedText& text,
                                    std::span<const LexiconEntry> lexicon);

// One match per resolved trigger occurrence, ordered by (start, rule order).
std::vector<RuleMatch> ApplyDisambiguation(const Review& review,
                                           std::span<const DisambiguationRule> rules);
std::vector<RuleMatch> ApplyDisambiguation(const PreparedText& text,
                                           std::span<const DisambiguationRule> rules);

struct TagResult {
  LabelVector labels;
  std::vector<RuleMatch> matches;
};

// Union of lexicon and disambiguation matches. A trigger occurrence owns its
// text: lexicon matches overlapping it are dropped whether or not the rule
// resolved. Labels always satisfy the hierarchy.
TagResult TagReview(const Review& review, const RuleConfig& config);

}  // namespace haf::rules

#endif  // HAF_RULES_TAGGER_H_
