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

#ifndef HAF_RULES_RULE_CONFIG_H_
#define HAF_RULES_RULE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/error.h"
#include "haf/rules/pattern.h"

namespace haf::rules {

// Keyword or regex that tags every occurrence with a fixed set of specific
// aspects.
struct LexiconEntry {
  std::string id;
  Pattern pattern;
  std::vector<int> targets;  // specific indices, non-empty
};

struct DisambiguationBranch {
  std::vector<Pattern> cues;
  int target = 0;  // specific index
};

// An ambiguous trigger term resolved by context. Branches are tried in
// order; the first branch with any cue within `window` tokens of the trigger
// wins. Otherwise `default_target` fires, if set.
struct DisambiguationRule {
  std::string id;
  std::string description;
  Pattern trigger;
  std::vector<DisambiguationBranch> branches;
  std::optional<int> default_target;
  int window = 3;
};

struct ConfigDiagnostic {
  int line = 0;  // 1-based; 0 when unknown
  std::string message;
};

class RuleConfigError : public ValidationError {
 public:
  RuleConfigError(std::string source, std::vector<ConfigDiagnostic> diagnostics);

  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

// Compiled, validated rule set. Immutable after loading and safe to share
// between threads.
//
// File format (JSON):
//   {
//     "version": "...",
//     "lexicon": [
//       {"id": "...", "pattern": "mura" | ["mura", "murang mura"],
//        "mode": "word" | "regex", "targets": ["PRICE.Affordability"]}
//     ],
//     "disambiguation": [
//       {"id": "bilis", "trigger": "bilis", "trigger_mode": "word",
//        "window": 3,
//        "branches": [{"cues": ["dumating"], "cue_mode": "word",
//                      "target": "DELIVERY.Timeliness"}],
//        "default": "none" | "<specific slug>"}
//     ]
//   }
// A lexicon entry with an array of patterns expands to one entry per
// pattern, with ids suffixed "#k".
class RuleConfig {
 public:
  explicit RuleConfig(std::string version = "") : version_(std::move(version)) {}

  // Throw RuleConfigError listing every problem with its line number.
  static RuleConfig Parse(std::string_view json_text, std::string source_name = "<rules>");
  static RuleConfig Load(const std::filesystem::path& path);

  const std::string& version() const { return version_; }
  const std::vector<LexiconEntry>& lexicon() const { return lexicon_; }
  const std::vector<DisambiguationRule>& disambiguation() const { return disambiguation_; }

  RuleConfig& AddLexiconEntry(LexiconEntry entry);
  RuleConfig& AddRule(DisambiguationRule rule);

 private:
  std::string version_;
  std::vector<LexiconEntry> lexicon_;
  std::vector<DisambiguationRule> disambiguation_;
};

}  // namespace haf::rules

#endif  // HAF_RULES_RULE_CONFIG_H_
