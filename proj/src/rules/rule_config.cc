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

#include "haf/rules/rule_config.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "haf/core/taxonomy.h"
#include "json.hpp"

namespace haf::rules {
namespace {

using nlohmann::json;

int LineOfOffset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Finds the starting line of each element of the top-level arrays in a JSON
// document. nlohmann::json keeps no positions, so this walks the raw text.
// Only called on text that already parsed, so it assumes well-formed input.
class ElementLineScanner {
 public:
  explicit ElementLineScanner(std::string_view text) : text_(text) {}

  std::map<std::string, std::vector<int>> Scan() {
    std::map<std::string, std::vector<int>> lines;
    SkipSpace();
    if (!Eat('{')) return lines;
    SkipSpace();
    if (Eat('}')) return lines;
    while (pos_ < text_.size()) {
      SkipSpace();
      std::string key = ReadString();
      SkipSpace();
      Eat(':');
      SkipSpace();
      if (Peek() == '[') {
        ++pos_;
        std::vector<int>& out = lines[key];
        SkipSpace();
        if (!Eat(']')) {
          while (pos_ < text_.size()) {
            SkipSpace();
            out.push_back(LineOfOffset(text_, pos_));
            SkipValue();
            SkipSpace();
            if (Eat(',')) continue;
            Eat(']');
            break;
          }
        }
      } else {
        SkipValue();
      }
      SkipSpace();
      if (Eat(',')) continue;
      break;
    }
    return lines;
  }

 private:
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool Eat(char c) {
    if (Peek() != c) return false;
    ++pos_;
    return true;
  }
  void SkipSpace() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }
  std::string ReadString() {
    std::size_t begin = pos_;
    SkipString();
    return json::parse(text_.substr(begin, pos_ - begin)).get<std::string>();
  }
  void SkipString() {
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    ++pos_;
  }
  void SkipValue() {
    char c = Peek();
    if (c == '"') {
      SkipString();
      return;
    }
    if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (d == '"') {
          SkipString();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') --depth;
        ++pos_;
        if (depth == 0) return;
      }
      return;
    }
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
           text_[pos_] != ']') {
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Loader {
 public:
  Loader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  RuleConfig Run() {
    json doc;
    try {
      doc = json::parse(text_);
    } catch (const json::parse_error& e) {
      Fail(LineOfOffset(text_, e.byte == 0 ? 0 : e.byte - 1), e.what());
      throw RuleConfigError(source_, std::move(diagnostics_));
    }
    if (!doc.is_object()) {
      Fail(1, "top level must be an object");
      throw RuleConfigError(source_, std::move(diagnostics_));
    }
    element_lines_ = ElementLineScanner(text_).Scan();

    for (const auto& [key, value] : doc.items()) {
      if (key != "version" && key != "lexicon" && key != "disambiguation" &&
          key != "description") {
        Fail(1, "unknown top-level key '" + key + "'");
      }
    }
    if (auto it = doc.find("version"); it != doc.end()) {
      if (it->is_string()) {
        config_version_ = it->get<std::string>();
      } else {
        Fail(1, "'version' must be a string");
      }
    }
    if (auto it = doc.find("lexicon"); it != doc.end()) {
      if (!it->is_array()) {
        Fail(1, "'lexicon' must be an array");
      } else {
        for (std::size_t i = 0; i < it->size(); ++i) LoadLexicon((*it)[i], i);
      }
    }
    if (auto it = doc.find("disambiguation"); it != doc.end()) {
      if (!it->is_array()) {
        Fail(1, "'disambiguation' must be an array");
      } else {
        for (std::size_t i = 0; i < it->size(); ++i) LoadRule((*it)[i], i);
      }
    }
    if (!diagnostics_.empty()) throw RuleConfigError(source_, std::move(diagnostics_));
    return Build();
  }

 private:
  int LineOf(const std::string& array, std::size_t index) const {
    auto it = element_lines_.find(array);
    if (it == element_lines_.end() || index >= it->second.size()) return 0;
    return it->second[index];
  }

  void Fail(int line, std::string message) {
    diagnostics_.push_back({line, std::move(message)});
  }

  std::optional<MatchMode> ReadMode(const json& obj, const char* key, int line,
                                    const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return MatchMode::kWord;
    if (it->is_string() && *it == "word") return MatchMode::kWord;
    if (it->is_string() && *it == "regex") return MatchMode::kRegex;
    Fail(line, where + ": '" + key + "' must be \"word\" or \"regex\"");
    return std::nullopt;
  }

  std::optional<int> ReadSpecific(const json& value, int line, const std::string& where) {
    if (!value.is_string()) {
      Fail(line, where + ": target must be a string slug");
      return std::nullopt;
    }
    auto label = Taxonomy::find(value.get<std::string>());
    if (!label) {
      Fail(line, where + ": unknown label '" + value.get<std::string>() + "'");
      return std::nullopt;
    }
    if (!IsSpecificLabel(*label)) {
      Fail(line, where + ": target '" + value.get<std::string>() +
                     "' is a general category; targets must be specific aspects");
      return std::nullopt;
    }
    return SpecificOf(*label);
  }

  std::optional<Pattern> Compile(const json& value, MatchMode mode, int line,
                                 const std::string& where) {
    if (!value.is_string()) {
      Fail(line, where + ": pattern must be a string");
      return std::nullopt;
    }
    try {
      return Pattern(value.get<std::string>(), mode);
    } catch (const std::invalid_argument& e) {
      Fail(line, where + ": " + e.what());
      return std::nullopt;
    }
  }

  void LoadLexicon(const json& obj, std::size_t index) {
    const int line = LineOf("lexicon", index);
    std::string where = "lexicon[" + std::to_string(index) + "]";
    if (!obj.is_object()) {
      Fail(line, where + ": entry must be an object");
      return;
    }
    std::string id = where;
    if (auto it = obj.find("id"); it != obj.end() && it->is_string()) {
      id = it->get<std::string>();
      where += " (" + id + ")";
    }
    for (const auto& [key, value] : obj.items()) {
      if (key != "id" && key != "pattern" && key != "mode" && key != "targets" &&
          key != "note") {
        Fail(line, where + ": unknown key '" + key + "'");
      }
    }
    auto mode = ReadMode(obj, "mode", line, where);

    std::vector<int> targets;
    auto targets_it = obj.find("targets");
    if (targets_it == obj.end() || !targets_it->is_array() || targets_it->empty()) {
      Fail(line, where + ": 'targets' must be a non-empty array");
    } else {
      for (const json& t : *targets_it) {
        if (auto s = ReadSpecific(t, line, where)) targets.push_back(*s);
      }
    }

    std::vector<json> patterns;
    auto pattern_it = obj.find("pattern");
    if (pattern_it == obj.end()) {
      Fail(line, where + ": missing 'pattern'");
    } else if (pattern_it->is_array()) {
      if (pattern_it->empty()) Fail(line, where + ": 'pattern' array is empty");
      patterns.assign(pattern_it->begin(), pattern_it->end());
    } else {
      patterns.push_back(*pattern_it);
    }
    if (!mode) return;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      auto compiled = Compile(patterns[k], *mode, line, where);
      if (!compiled) continue;
      std::string entry_id = patterns.size() == 1 ? id : id + "#" + std::to_string(k);
      lexicon_.push_back({std::move(entry_id), std::move(*compiled), targets});
    }
  }

  void LoadRule(const json& obj, std::size_t index) {
    const int line = LineOf("disambiguation", index);
    std::string where = "disambiguation[" + std::to_string(index) + "]";
    if (!obj.is_object()) {
      Fail(line, where + ": rule must be an object");
      return;
    }
    const std::size_t failures_before = diagnostics_.size();
    DisambiguationRule rule{where, "", Pattern("x", MatchMode::kWord), {}, std::nullopt, 3};
    if (auto it = obj.find("id"); it != obj.end() && it->is_string()) {
      rule.id = it->get<std::string>();
      where += " (" + rule.id + ")";
    } else {
      Fail(line, where + ": missing string 'id'");
    }
    for (const auto& [key, value] : obj.items()) {
      static const std::set<std::string> kKnown = {
          "id", "description", "trigger", "trigger_mode", "window", "branches", "default"};
      if (!kKnown.count(key)) Fail(line, where + ": unknown key '" + key + "'");
    }
    if (auto it = obj.find("description"); it != obj.end() && it->is_string()) {
      rule.description = it->get<std::string>();
    }
    if (auto it = obj.find("window"); it != obj.end()) {
      if (!it->is_number_integer() || it->get<int>() < 0) {
        Fail(line, where + ": 'window' must be a non-negative integer");
      } else {
        rule.window = it->get<int>();
      }
    }
    auto trigger_mode = ReadMode(obj, "trigger_mode", line, where);
    if (auto it = obj.find("trigger"); it == obj.end()) {
      Fail(line, where + ": missing 'trigger'");
    } else if (trigger_mode) {
      if (auto p = Compile(*it, *trigger_mode, line, where + " trigger")) rule.trigger = *p;
    }

    auto branches_it = obj.find("branches");
    if (branches_it == obj.end() || !branches_it->is_array() || branches_it->empty()) {
      Fail(line, where + ": 'branches' must be a non-empty array");
    } else {
      for (std::size_t b = 0; b < branches_it->size(); ++b) {
        const json& branch = (*branches_it)[b];
        std::string bwhere = where + " branch " + std::to_string(b);
        if (!branch.is_object()) {
          Fail(line, bwhere + ": must be an object");
          continue;
        }
        DisambiguationBranch out;
        auto cue_mode = ReadMode(branch, "cue_mode", line, bwhere);
        auto cues = branch.find("cues");
        if (cues == branch.end() || !cues->is_array() || cues->empty()) {
          Fail(line, bwhere + ": 'cues' must be a non-empty array");
        } else if (cue_mode) {
          for (const json& cue : *cues) {
            if (auto p = Compile(cue, *cue_mode, line, bwhere)) out.cues.push_back(*p);
          }
        }
        if (auto t = branch.find("target"); t == branch.end()) {
          Fail(line, bwhere + ": missing 'target'");
        } else if (auto s = ReadSpecific(*t, line, bwhere)) {
          out.target = *s;
        }
        rule.branches.push_back(std::move(out));
      }
    }
    if (auto it = obj.find("default"); it != obj.end() && !(it->is_string() && *it == "none")) {
      if (auto s = ReadSpecific(*it, line, where + " default")) rule.default_target = *s;
    }
    if (diagnostics_.size() != failures_before) return;

    std::set<int> targets;
    for (const auto& b : rule.branches) targets.insert(b.target);
    if (rule.default_target) targets.insert(*rule.default_target);
    if (targets.size() < 2) {
      Fail(line, where + ": needs at least two distinct targets across branches and default; "
                         "use a lexicon entry instead");
      return;
    }
    if (!seen_rule_ids_.insert(rule.id).second) {
      Fail(line, where + ": duplicate rule id");
      return;
    }
    rules_.push_back(std::move(rule));
  }

  RuleConfig Build() {
    RuleConfig config(config_version_);
    for (auto& e : lexicon_) config.AddLexiconEntry(std::move(e));
    for (auto& r : rules_) config.AddRule(std::move(r));
    return config;
  }

  std::string_view text_;
  std::string source_;
  std::string config_version_;
  std::vector<ConfigDiagnostic> diagnostics_;
  std::map<std::string, std::vector<int>> element_lines_;
  std::vector<LexiconEntry> lexicon_;
  std::vector<DisambiguationRule> rules_;
  std::set<std::string> seen_rule_ids_;
};

std::string FormatDiagnostics(const std::string& source,
                              const std::vector<ConfigDiagnostic>& diagnostics) {
  std::ostringstream out;
  out << "invalid rule config " << source << ":";
  for (const auto& d : diagnostics) {
    out << "\n  " << source << ":" << d.line << ": " << d.message;
  }
  return out.str();
}

}  // namespace

RuleConfigError::RuleConfigError(std::string source, std::vector<ConfigDiagnostic> diagnostics)
    : ValidationError(FormatDiagnostics(source, diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

RuleConfig RuleConfig::Parse(std::string_view json_text, std::string source_name) {
  return Loader(json_text, std::move(source_name)).Run();
}

RuleConfig RuleConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read rule config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path.string());
}

RuleConfig& RuleConfig::AddLexiconEntry(LexiconEntry entry) {
  if (entry.targets.empty()) throw ValidationError("lexicon entry " + entry.id + " has no targets");
  for (int t : entry.targets) Taxonomy::parent_of(t);  // range check
  lexicon_.push_back(std::move(entry));
  return *this;
}

RuleConfig& RuleConfig::AddRule(DisambiguationRule rule) {
  std::set<int> targets;
  for (const auto& b : rule.branches) {
    if (b.cues.empty()) throw ValidationError("rule " + rule.id + " has a branch without cues");
    Taxonomy::parent_of(b.target);
    targets.insert(b.target);
  }
  if (rule.default_target) {
    Taxonomy::parent_of(*rule.default_target);
    targets.insert(*rule.default_target);
  }
  if (targets.size() < 2) {
    throw ValidationError("rule " + rule.id + " needs at least two distinct targets");
  }
  if (rule.window < 0) throw ValidationError("rule " + rule.id + " has a negative window");
  disambiguation_.push_back(std::move(rule));
  return *this;
}

}  // namespace haf::rules
