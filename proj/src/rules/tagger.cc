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

#include "haf/rules/tagger.h"

#include <algorithm>
#include <tuple>

namespace haf::rules {
namespace {

// Sort key carried alongside matches until output.
struct Keyed {
  std::size_t start;
  int source;  // 0 = lexicon, 1 = disambiguation
  std::size_t rule_order;
  std::size_t target_order;
  RuleMatch match;
};

void SortKeyed(std::vector<Keyed>& keyed) {
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.start, a.source, a.rule_order, a.target_order) <
           std::tie(b.start, b.source, b.rule_order, b.target_order);
  });
}

std::vector<RuleMatch> Unkey(std::vector<Keyed>&& keyed) {
  std::vector<RuleMatch> out;
  out.reserve(keyed.size());
  for (Keyed& k : keyed) out.push_back(std::move(k.match));
  return out;
}

RuleMatch MakeMatch(const PreparedText& text, Occurrence occ, int specific,
                    const std::string& rule_id) {
  auto [begin, end] = text.normalized().ToOriginal(occ.begin, occ.end);
  return RuleMatch{AspectSpan::Make(Taxonomy::parent_of(specific), text.original(), begin, end),
                   specific, rule_id};
}

std::vector<Keyed> KeyedLexicon(const PreparedText& text, std::span<const LexiconEntry> lexicon) {
  std::vector<Keyed> keyed;
  for (std::size_t e = 0; e < lexicon.size(); ++e) {
    const LexiconEntry& entry = lexicon[e];
    for (const Occurrence& occ : entry.pattern.FindAll(text)) {
      for (std::size_t t = 0; t < entry.targets.size(); ++t) {
        keyed.push_back({occ.begin, 0, e, t, MakeMatch(text, occ, entry.targets[t], entry.id)});
      }
    }
  }
  return keyed;
}

// First-token/last-token index range covered by a normalized range. For a
// range with no word characters, both ends collapse onto the next token.
std::pair<std::ptrdiff_t, std::ptrdiff_t> TokenRange(const PreparedText& text, Occurrence occ) {
  const auto& tokens = text.tokens();
  auto first = static_cast<std::ptrdiff_t>(text.TokenAtOrAfter(occ.begin));
  auto last = first - 1;
  for (auto i = first; i < static_cast<std::ptrdiff_t>(tokens.size()); ++i) {
    if (tokens[i].begin >= occ.end) break;
    last = i;
  }
  if (last < first) last = first;
  return {first, last};
}

bool Overlaps(Occurrence a, Occurrence b) { return a.begin < b.end && b.begin < a.end; }

// Resolves one trigger occurrence; returns the winning target, if any.
std::optional<int> Resolve(const PreparedText& text, const DisambiguationRule& rule,
                           Occurrence trigger) {
  auto [first, last] = TokenRange(text, trigger);
  const std::ptrdiff_t lo = first - rule.window;
  const std::ptrdiff_t hi = last + rule.window;
  for (const DisambiguationBranch& branch : rule.branches) {
    for (const Pattern& cue : branch.cues) {
      for (const Occurrence& occ : cue.FindAll(text)) {
        if (Overlaps(occ, trigger)) continue;
        auto [cue_first, cue_last] = TokenRange(text, occ);
        if (cue_first >= lo && cue_last <= hi) return branch.target;
      }
    }
  }
  return rule.default_target;
}

struct DisambiguationOutput {
  std::vector<Keyed> matches;
  std::vector<Occurrence> trigger_spans;
};

DisambiguationOutput RunDisambiguation(const PreparedText& text,
                                       std::span<const DisambiguationRule> rules) {
  DisambiguationOutput out;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const DisambiguationRule& rule = rules[r];
    for (const Occurrence& occ : rule.trigger.FindAll(text)) {
      out.trigger_spans.push_back(occ);
      if (auto target = Resolve(text, rule, occ)) {
        out.matches.push_back({occ.begin, 1, r, 0, MakeMatch(text, occ, *target, rule.id)});
      }
    }
  }
  return out;
}

}  // namespace

nlohmann::ordered_json RuleMatch::to_json() const {
  nlohmann::ordered_json obj = span.to_json();
  obj["specific"] = Taxonomy::slug(SpecificLabel(specific));
  obj["rule"] = rule_id;
  return obj;
}

std::vector<RuleMatch> MatchLexicon(const PreparedText& text,
                                    std::span<const LexiconEntry> lexicon) {
  std::vector<Keyed> keyed = KeyedLexicon(text, lexicon);
  SortKeyed(keyed);
  return Unkey(std::move(keyed));
}

std::vector<RuleMatch> MatchLexicon(const Review& review, std::span<const LexiconEntry> lexicon) {
  return MatchLexicon(PreparedText(review.text), lexicon);
}

std::vector<RuleMatch> ApplyDisambiguation(const PreparedText& text,
                                           std::span<const DisambiguationRule> rules) {
  DisambiguationOutput out = RunDisambiguation(text, rules);
  SortKeyed(out.matches);
  return Unkey(std::move(out.matches));
}

std::vector<RuleMatch> ApplyDisambiguation(const Review& review,
                                           std::span<const DisambiguationRule> rules) {
  return ApplyDisambiguation(PreparedText(review.text), rules);
}

TagResult TagReview(const Review& review, const RuleConfig& config) {
  const PreparedText text(review.text);
  std::vector<Keyed> lexicon = KeyedLexicon(text, config.lexicon());
  DisambiguationOutput disambiguation = RunDisambiguation(text, config.disambiguation());

  // Trigger spans are normalized ranges; lexicon keys carry only the start,
  // so compare on original offsets via the produced spans.
  std::vector<std::pair<std::size_t, std::size_t>> owned;
  for (const Occurrence& occ : disambiguation.trigger_spans) {
    owned.push_back(text.normalized().ToOriginal(occ.begin, occ.end));
  }
  std::erase_if(lexicon, [&](const Keyed& k) {
    return std::any_of(owned.begin(), owned.end(), [&](const auto& range) {
      return k.match.span.start < range.second && range.first < k.match.span.end;
    });
  });

  std::vector<Keyed> all = std::move(lexicon);
  for (Keyed& k : disambiguation.matches) all.push_back(std::move(k));
  SortKeyed(all);

  TagResult result;
  result.matches = Unkey(std::move(all));
  for (const RuleMatch& m : result.matches) result.labels.set_specific_with_parent(m.specific);
  return result;
}

}  // namespace haf::rules
