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


#include "haf/llm/parse.h"

#include <algorithm>
#include <map>

#include "haf/rules/normalizer.h"

namespace haf::llm {
namespace {

// Index one past the bracket closing the one at `open`, or npos. Brackets
// inside JSON strings are skipped.
std::size_t MatchBracket(std::string_view s, std::size_t open) {
  const char opener = s[open];
  const char closer = opener == '{' ? '}' : ']';
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == opener) {
      ++depth;
    } else if (c == closer && --depth == 0) {
      return i + 1;
    }
  }
  return std::string_view::npos;
}

std::optional<nlohmann::json> FirstValue(std::string_view s, bool want_object) {
  const char opener = want_object ? '{' : '[';
  for (std::size_t i = s.find(opener); i != std::string_view::npos; i = s.find(opener, i + 1)) {
    const std::size_t end = MatchBracket(s, i);
    if (end == std::string_view::npos) continue;
    auto parsed = nlohmann::json::parse(s.substr(i, end - i), nullptr, false);
    if (!parsed.is_discarded()) return parsed;
  }
  return std::nullopt;
}

}  // namespace

std::optional<nlohmann::json> ExtractJson(std::string_view raw, bool want_object) {
  // Fenced blocks first.
  std::size_t pos = 0;
  while ((pos = raw.find("```", pos)) != std::string_view::npos) {
    std::size_t body = raw.find('\n', pos + 3);
    const std::size_t close = raw.find("```", pos + 3);
    if (close == std::string_view::npos) break;
    if (body == std::string_view::npos || body > close) body = pos + 3;
    if (auto v = FirstValue(raw.substr(body, close - body), want_object)) return v;
    pos = close + 3;
  }
  return FirstValue(raw, want_object);
}

LabelParse ParseBooleanOutput(std::string_view raw) {
  LabelParse out;
  auto value = ExtractJson(raw, true);
  if (!value) {
    out.failure = "no JSON object found";
    return out;
  }
  try {
    LabelVector v = LabelVector::FromJson(*value);
    out.repairs = v.inconsistent_count();
    out.labels = EnforceHierarchy(v);
  } catch (const std::exception& e) {
    out.failure = e.what();
  }
  return out;
}

SpanParse ParseSpanOutput(std::string_view raw) {
  SpanParse out;
  nlohmann::json list;
  if (auto obj = ExtractJson(raw, true); obj && obj->contains("spans")) {
    list = (*obj)["spans"];
  } else if (auto arr = ExtractJson(raw, false)) {
    list = *arr;
  } else {
    out.failure = "no span list found";
    return out;
  }
  if (!list.is_array()) {
    out.failure = "'spans' is not an array";
    return out;
  }
  std::vector<SpanAnswer> spans;
  for (const auto& item : list) {
    if (!item.is_object() || !item.contains("text") || !item["text"].is_string() ||
        !item.contains("category") || !item["category"].is_string()) {
      out.failure = "span needs string 'category' and 'text'";
      return out;
    }
    auto g = Taxonomy::find_general(item["category"].get<std::string>());
    if (!g) {
      out.failure = "unknown span category '" + item["category"].get<std::string>() + "'";
      return out;
    }
    spans.push_back({*g, item["text"].get<std::string>()});
  }
  out.spans = std::move(spans);
  return out;
}

LocatedSpans LocateSpans(const Review& review, const std::vector<SpanAnswer>& answers) {
  LocatedSpans out;
  const std::string& text = review.text;
  const auto offsets = utf8::CodePointOffsets(text);
  auto cp_of_byte = [&](std::size_t byte) {
    return static_cast<std::size_t>(std::lower_bound(offsets.begin(), offsets.end(), byte) -
                                    offsets.begin());
  };
  std::optional<rules::NormalizedText> norm;
  // Next search position per answer text, so repeats take later occurrences.
  std::map<std::string, std::size_t> next_exact;
  std::map<std::u32string, std::size_t> next_norm;

  for (const auto& a : answers) {
    if (a.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      out.dropped.push_back(a);
      continue;
    }
    std::size_t& from = next_exact[a.text];
    std::size_t byte = text.find(a.text, from);
    // Only accept hits that start and end on code-point boundaries.
    while (byte != std::string::npos &&
           !(std::binary_search(offsets.begin(), offsets.end(), byte) &&
             std::binary_search(offsets.begin(), offsets.end(), byte + a.text.size()))) {
      byte = text.find(a.text, byte + 1);
    }
    if (byte != std::string::npos) {
      from = byte + a.text.size();
      out.spans.push_back(AspectSpan::Make(a.category, text, cp_of_byte(byte),
                                           cp_of_byte(byte + a.text.size())));
      continue;
    }
    if (!norm) norm = rules::Normalize(text);
    const std::u32string needle = rules::Normalize(a.text).text;
    std::size_t& nfrom = next_norm[needle];
    std::size_t hit = needle.empty() ? std::u32string::npos : norm->text.find(needle, nfrom);
    if (hit == std::u32string::npos) {
      out.dropped.push_back(a);
      continue;
    }
    nfrom = hit + needle.size();
    auto [b, e] = norm->ToOriginal(hit, hit + needle.size());
    out.spans.push_back(AspectSpan::Make(a.category, text, b, e));
  }
  return out;
}

}  // namespace haf::llm
