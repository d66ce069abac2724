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

#include "haf/rules/pattern.h"

#include <unicode/regex.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <stdexcept>

namespace haf::rules {

struct PreparedText::Utf16View {
  icu::UnicodeString text;
  // unit_to_cp[u] = code-point index of UTF-16 unit u; one extra entry for
  // the end position.
  std::vector<std::size_t> unit_to_cp;
};

struct Pattern::Compiled {
  std::u32string literal;                    // word mode
  std::unique_ptr<icu::RegexPattern> regex;  // regex mode
};

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::kWord ? "word" : "regex";
}

PreparedText::PreparedText(std::string_view original)
    : original_(original),
      normalized_(Normalize(original)),
      tokens_(Tokenize(normalized_.text)),
      utf16_(std::make_unique<Utf16View>()) {
  const auto& cps = normalized_.text;
  utf16_->text = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(cps.data()),
                                               static_cast<int32_t>(cps.size()));
  utf16_->unit_to_cp.reserve(utf16_->text.length() + 1);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    utf16_->unit_to_cp.push_back(i);
    if (cps[i] >= 0x10000) utf16_->unit_to_cp.push_back(i);
  }
  utf16_->unit_to_cp.push_back(cps.size());
}

PreparedText::~PreparedText() = default;
PreparedText::PreparedText(PreparedText&&) noexcept = default;
PreparedText& PreparedText::operator=(PreparedText&&) noexcept = default;

std::size_t PreparedText::TokenAtOrAfter(std::size_t pos) const {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), pos,
                             [](const Token& t, std::size_t p) { return t.end <= p; });
  return static_cast<std::size_t>(it - tokens_.begin());
}

Pattern::Pattern(std::string source, MatchMode mode) : source_(std::move(source)), mode_(mode) {
  auto compiled = std::make_shared<Compiled>();
  if (mode_ == MatchMode::kWord) {
    compiled->literal = Normalize(source_).text;
    if (compiled->literal.empty()) {
      throw std::invalid_argument("pattern '" + source_ + "' is empty after normalization");
    }
  } else {
    if (source_.empty()) throw std::invalid_argument("empty regular expression");
    UParseError parse_error;
    UErrorCode status = U_ZERO_ERROR;
    compiled->regex.reset(icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(source_),
                                                     UREGEX_CASE_INSENSITIVE, parse_error,
                                                     status));
    if (U_FAILURE(status)) {
      throw std::invalid_argument("regex '" + source_ + "' does not compile (" +
                                  u_errorName(status) + " at offset " +
                                  std::to_string(parse_error.offset) + ")");
    }
  }
  compiled_ = std::move(compiled);
}

std::vector<Occurrence> Pattern::FindAll(const PreparedText& text) const {
  std::vector<Occurrence> out;
  const std::u32string& hay = text.normalized().text;
  if (mode_ == MatchMode::kWord) {
    const std::u32string& needle = compiled_->literal;
    const bool left_word = IsWordChar(needle.front());
    const bool right_word = IsWordChar(needle.back());
    std::size_t pos = 0;
    while ((pos = hay.find(needle, pos)) != std::u32string::npos) {
      std::size_t end = pos + needle.size();
      bool left_ok = !left_word || pos == 0 || !IsWordChar(hay[pos - 1]);
      bool right_ok = !right_word || end == hay.size() || !IsWordChar(hay[end]);
      if (left_ok && right_ok) {
        out.push_back({pos, end});
        pos = end;
      } else {
        ++pos;
      }
    }
    return out;
  }

  const PreparedText::Utf16View& view = text.utf16();
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::RegexMatcher> matcher(compiled_->regex->matcher(view.text, status));
  if (U_FAILURE(status)) return out;
  while (matcher->find(status) && U_SUCCESS(status)) {
    int32_t begin = matcher->start(status);
    int32_t end = matcher->end(status);
    if (U_FAILURE(status)) break;
    if (end <= begin) continue;  // empty matches carry no span
    out.push_back({view.unit_to_cp[begin], view.unit_to_cp[end]});
  }
  return out;
}

}  // namespace haf::rules
