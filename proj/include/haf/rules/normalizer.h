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

#ifndef HAF_RULES_NORMALIZER_H_
#define HAF_RULES_NORMALIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace haf::rules {

// Canonicalized review text with a map back to the original.
//
// Each normalized code point i came from the original code-point range
// [source_begin[i], source_end[i]). Both arrays are non-decreasing, so any
// normalized range maps to one contiguous original range.
struct NormalizedText {
  std::u32string text;
  std::vector<std::size_t> source_begin;
  std::vector<std::size_t> source_end;

  std::string utf8() const;

  // Original code-point range covered by normalized range [begin, end).
  // Requires begin < end <= text.size().
  std::pair<std::size_t, std::size_t> ToOriginal(std::size_t begin, std::size_t end) const;
};

// Lowercases (full case folding), applies NFKC compatibility normalization
// and collapses a token-final run of three or more identical letters to one
// letter ("muraaaa" -> "mura"). Shorter runs and word-internal runs are kept.
NormalizedText Normalize(std::string_view text);

// Normalize(text).utf8().
std::string NormalizeString(std::string_view text);

// A maximal run of letters, digits and combining marks, in normalized
// code-point offsets.
struct Token {
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<Token> Tokenize(std::u32string_view text);

bool IsWordChar(char32_t cp);

}  // namespace haf::rules

#endif  // HAF_RULES_NORMALIZER_H_
