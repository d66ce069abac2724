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

#ifndef HAF_CORE_REVIEW_H_
#define HAF_CORE_REVIEW_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/taxonomy.h"
#include "json.hpp"

namespace haf {

// Review text is UTF-8. Every offset in this library that refers to review
// text counts Unicode code points, never bytes.
struct Review {
  std::string id;
  std::string text;
  std::optional<std::string> source;

  // Throws ValidationError when the id is empty or the text is blank.
  void Validate() const;

  friend bool operator==(const Review&, const Review&) = default;
};

// Half-open [start, end) code-point range of a review text, tagged with a
// general category.
struct AspectSpan {
  General category = General::kProduct;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;

  // Builds a span and fills `surface` from `text`. Throws ValidationError on
  // an empty or out-of-range span.
  static AspectSpan Make(General category, std::string_view text, std::size_t start,
                         std::size_t end);

  // True when the offsets are in range and surface equals the text slice.
  bool IsValidFor(std::string_view text) const;

  nlohmann::ordered_json to_json() const;
  // Throws ValidationError on malformed objects. Does not check the text.
  static AspectSpan FromJson(const nlohmann::json& object);

  friend bool operator==(const AspectSpan&, const AspectSpan&) = default;
};

namespace utf8 {

// Byte offset of every code point, plus a final entry equal to text.size().
// Invalid sequences count as one code point per byte.
std::vector<std::size_t> CodePointOffsets(std::string_view text);

std::size_t Length(std::string_view text);

// Substring by code-point range. Throws std::out_of_range.
std::string Slice(std::string_view text, std::size_t start, std::size_t end);

std::u32string Decode(std::string_view text);
std::string Encode(std::u32string_view text);
void Append(char32_t cp, std::string& out);

}  // namespace utf8
}  // namespace haf

#endif  // HAF_CORE_REVIEW_H_
