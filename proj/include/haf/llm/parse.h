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


#ifndef HAF_LLM_PARSE_H_
#define HAF_LLM_PARSE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "haf/llm/prompt.h"
#include "json.hpp"

namespace haf::llm {

// The first JSON value of the wanted kind found in `raw`: the contents of
// code fences are tried first, then each balanced {...} or [...] in order.
std::optional<nlohmann::json> ExtractJson(std::string_view raw, bool want_object);

struct LabelParse {
  std::optional<LabelVector> labels;  // hierarchy-enforced
  // Specifics cleared by hierarchy enforcement.
  int repairs = 0;
  std::string failure;  // set when labels is empty

  bool ok() const { return labels.has_value(); }
};

// Never throws. Accepts an object keyed by slugs; missing keys are false.
LabelParse ParseBooleanOutput(std::string_view raw);

struct SpanParse {
  std::optional<std::vector<SpanAnswer>> spans;
  std::string failure;

  bool ok() const { return spans.has_value(); }
};

// Accepts {"spans": [...]} or a bare array of {"category", "text"}. Never
// throws.
SpanParse ParseSpanOutput(std::string_view raw);

struct LocatedSpans {
  std::vector<AspectSpan> spans;
  // Answers that could not be found in the review.
  std::vector<SpanAnswer> dropped;
};

// Aligns answers to code-point offsets: an exact substring match first, then
// a match on normalized text mapped back to the original. Repeated answers
// take successive occurrences. Every returned span is valid for the text.
LocatedSpans LocateSpans(const Review& review, const std::vector<SpanAnswer>& answers);

}  // namespace haf::llm

#endif  // HAF_LLM_PARSE_H_
