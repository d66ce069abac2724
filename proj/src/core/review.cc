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

#include "haf/core/review.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "haf/core/error.h"

namespace haf {

void Review::Validate() const {
  if (id.empty()) throw ValidationError("review id is empty");
  bool blank = std::all_of(text.begin(), text.end(),
                           [](unsigned char c) { return std::isspace(c) != 0; });
  if (blank) throw ValidationError("review '" + id + "' has empty text");
}

AspectSpan AspectSpan::Make(General category, std::string_view text, std::size_t start,
                            std::size_t end) {
  if (end <= start) {
    throw ValidationError("span end " + std::to_string(end) + " must exceed start " +
                          std::to_string(start));
  }
  if (end > utf8::Length(text)) {
    throw ValidationError("span end " + std::to_string(end) + " past end of text");
  }
  return AspectSpan{category, start, end, utf8::Slice(text, start, end)};
}

bool AspectSpan::IsValidFor(std::string_view text) const {
  if (end <= start || end > utf8::Length(text)) return false;
  return surface == utf8::Slice(text, start, end);
}

nlohmann::ordered_json AspectSpan::to_json() const {
  nlohmann::ordered_json obj;
  obj["category"] = to_string(category);
  obj["start"] = start;
  obj["end"] = end;
  obj["surface"] = surface;
  return obj;
}

AspectSpan AspectSpan::FromJson(const nlohmann::json& object) {
  if (!object.is_object()) throw ValidationError("span is not an object");
  auto field = [&](const char* name) -> const nlohmann::json& {
    auto it = object.find(name);
    if (it == object.end()) throw ValidationError(std::string("span missing '") + name + "'");
    return *it;
  };
  const auto& category = field("category");
  if (!category.is_string()) throw ValidationError("span category must be a string");
  auto general = Taxonomy::find_general(category.get<std::string>());
  if (!general) {
    throw ValidationError("unknown span category '" + category.get<std::string>() + "'");
  }
  const auto& start = field("start");
  const auto& end = field("end");
  if (!start.is_number_unsigned() || !end.is_number_unsigned()) {
    throw ValidationError("span offsets must be non-negative integers");
  }
  AspectSpan span;
  span.category = *general;
  span.start = start.get<std::size_t>();
  span.end = end.get<std::size_t>();
  if (span.end <= span.start) throw ValidationError("span end must exceed start");
  const auto& surface = field("surface");
  if (!surface.is_string()) throw ValidationError("span surface must be a string");
  span.surface = surface.get<std::string>();
  return span;
}

namespace utf8 {
namespace {

// Length of the sequence starting at `lead`, or 0 when `lead` cannot start
// one.
int SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return lead >= 0xC2 ? 2 : 0;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return lead <= 0xF4 ? 4 : 0;
  return 0;
}

// Decodes one code point at `pos`; returns bytes consumed (>= 1). Invalid
// input decodes to U+FFFD consuming one byte.
int DecodeAt(std::string_view text, std::size_t pos, char32_t* cp) {
  auto lead = static_cast<unsigned char>(text[pos]);
  int len = SequenceLength(lead);
  if (len == 0 || pos + len > text.size()) {
    *cp = 0xFFFD;
    return 1;
  }
  if (len == 1) {
    *cp = lead;
    return 1;
  }
  char32_t value = lead & (0x7F >> len);
  for (int i = 1; i < len; ++i) {
    auto c = static_cast<unsigned char>(text[pos + i]);
    if ((c & 0xC0) != 0x80) {
      *cp = 0xFFFD;
      return 1;
    }
    value = (value << 6) | (c & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (value < kMin[len] || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    *cp = 0xFFFD;
    return 1;
  }
  *cp = value;
  return len;
}

}  // namespace

std::vector<std::size_t> CodePointOffsets(std::string_view text) {
  std::vector<std::size_t> offsets;
  offsets.reserve(text.size() + 1);
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    offsets.push_back(pos);
    pos += DecodeAt(text, pos, &cp);
  }
  offsets.push_back(text.size());
  return offsets;
}

std::size_t Length(std::string_view text) {
  std::size_t n = 0;
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    pos += DecodeAt(text, pos, &cp);
    ++n;
  }
  return n;
}

std::string Slice(std::string_view text, std::size_t start, std::size_t end) {
  auto offsets = CodePointOffsets(text);
  if (start > end || end + 1 > offsets.size()) throw std::out_of_range("utf8 slice out of range");
  return std::string(text.substr(offsets[start], offsets[end] - offsets[start]));
}

std::u32string Decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  char32_t cp;
  while (pos < text.size()) {
    pos += DecodeAt(text, pos, &cp);
    out.push_back(cp);
  }
  return out;
}

void Append(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) Append(cp, out);
  return out;
}

}  // namespace utf8
}  // namespace haf
