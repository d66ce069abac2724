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

#ifndef HAF_RULES_PATTERN_H_
#define HAF_RULES_PATTERN_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "haf/rules/normalizer.h"

namespace haf::rules {

enum class MatchMode { kWord, kRegex };

std::string_view to_string(MatchMode mode);

// Review text prepared once for matching against many patterns.
class PreparedText {
 public:
  explicit PreparedText(std::string_view original);
  ~PreparedText();
  PreparedText(PreparedText&&) noexcept;
  PreparedText& operator=(PreparedText&&) noexcept;

  const NormalizedText& normalized() const { return normalized_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const std::string& original() const { return original_; }

  // Index of the token containing normalized offset `pos`, or the index of
  // the first token after it when `pos` is between tokens.
  std::size_t TokenAtOrAfter(std::size_t pos) const;

  struct Utf16View;
  const Utf16View& utf16() const { return *utf16_; }

 private:
  std::string original_;
  NormalizedText normalized_;
  std::vector<Token> tokens_;
  std::unique_ptr<Utf16View> utf16_;
};

struct Occurrence {
  std::size_t begin = 0;  // normalized code points
  std::size_t end = 0;
};

// An immutable compiled pattern; copies share the compiled state.
//
// Word mode: the pattern is normalized like review text and matched as a
// literal; a match must not be glued to a letter or digit on either side.
// Regex mode: ICU regular expression, case-insensitive, run against the
// normalized text.
class Pattern {
 public:
  // Throws std::invalid_argument with a readable message when the pattern
  // is empty or fails to compile.
  Pattern(std::string source, MatchMode mode);

  const std::string& source() const { return source_; }
  MatchMode mode() const { return mode_; }

  // Non-overlapping occurrences, left to right.
  std::vector<Occurrence> FindAll(const PreparedText& text) const;

 private:
  struct Compiled;
  std::string source_;
  MatchMode mode_;
  std::shared_ptr<const Compiled> compiled_;
};

}  // namespace haf::rules

#endif  // HAF_RULES_PATTERN_H_
