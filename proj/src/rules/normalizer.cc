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

#include "haf/rules/normalizer.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

#include "haf/core/review.h"

namespace haf::rules {
namespace {

bool IsMark(char32_t cp) {
  auto type = u_charType(static_cast<UChar32>(cp));
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

const icu::Normalizer2& FoldingNormalizer() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error(std::string("ICU NFKC_Casefold unavailable: ") +
                             u_errorName(status));
  }
  return *n;
}

// Collapses token-final runs of >= 3 identical letters in place.
void CollapseTerminalRepeats(NormalizedText& t) {
  NormalizedText out;
  out.text.reserve(t.text.size());
  std::size_t i = 0;
  const std::size_t n = t.text.size();
  while (i < n) {
    char32_t c = t.text[i];
    std::size_t j = i + 1;
    while (j < n && t.text[j] == c) ++j;
    std::size_t run = j - i;
    bool terminal = j == n || !IsWordChar(t.text[j]);
    if (run >= 3 && terminal && u_isalpha(static_cast<UChar32>(c))) {
      out.text.push_back(c);
      out.source_begin.push_back(t.source_begin[i]);
      out.source_end.push_back(t.source_end[j - 1]);
    } else {
      for (std::size_t k = i; k < j; ++k) {
        out.text.push_back(t.text[k]);
        out.source_begin.push_back(t.source_begin[k]);
        out.source_end.push_back(t.source_end[k]);
      }
    }
    i = j;
  }
  t = std::move(out);
}

}  // namespace

bool IsWordChar(char32_t cp) {
  return u_isalnum(static_cast<UChar32>(cp)) || IsMark(cp);
}

std::string NormalizedText::utf8() const { return utf8::Encode(text); }

std::pair<std::size_t, std::size_t> NormalizedText::ToOriginal(std::size_t begin,
                                                               std::size_t end) const {
  if (begin >= end || end > text.size()) throw std::out_of_range("normalized range");
  return {source_begin[begin], source_end[end - 1]};
}

NormalizedText Normalize(std::string_view text) {
  const icu::Normalizer2& folding = FoldingNormalizer();
  const std::u32string original = utf8::Decode(text);

  NormalizedText out;
  out.text.reserve(original.size());
  std::size_t i = 0;
  while (i < original.size()) {
    // A cluster is a base character plus its trailing combining marks; it is
    // normalized as a unit so composition (n + U+0303 -> ñ) still happens.
    std::size_t j = i + 1;
    while (j < original.size() && IsMark(original[j])) ++j;

    std::string cluster_utf8 = utf8::Encode(original.substr(i, j - i));
    icu::UnicodeString cluster = icu::UnicodeString::fromUTF8(cluster_utf8);
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString folded = folding.normalize(cluster, status);
    if (U_FAILURE(status)) folded = cluster;

    for (int32_t k = 0; k < folded.length();) {
      UChar32 cp = folded.char32At(k);
      out.text.push_back(static_cast<char32_t>(cp));
      out.source_begin.push_back(i);
      out.source_end.push_back(j);
      k += U16_LENGTH(cp);
    }
    i = j;
  }
  CollapseTerminalRepeats(out);
  return out;
}

std::string NormalizeString(std::string_view text) { return Normalize(text).utf8(); }

std::vector<Token> Tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsWordChar(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && IsWordChar(text[j])) ++j;
    tokens.push_back({i, j});
    i = j;
  }
  return tokens;
}

}  // namespace haf::rules
