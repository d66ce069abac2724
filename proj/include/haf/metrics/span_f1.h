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

#ifndef HAF_METRICS_SPAN_F1_H_
#define HAF_METRICS_SPAN_F1_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/review.h"
#include "haf/metrics/multilabel.h"

namespace haf::metrics {

// Span tokens: lowercase, drop punctuation code points, split on white space.
std::vector<std::string> SpanTokens(std::string_view surface);

// Spans of one review. Reviews are joined on id; a review present on one side
// only contributes all of its tokens as FN (gold) or FP (pred).
struct ReviewSpans {
  std::string review_id;
  std::vector<AspectSpan> spans;
};

struct TokenF1Row {
  General category = General::kProduct;
  Confusion counts;  // tn is unused
  Prf prf;
};

// Per (review, category) the span surfaces are pooled into one token
// multiset; TP is the multiset intersection. Counts are pooled over reviews
// per category. Throws ValidationError on duplicate review ids.
std::array<TokenF1Row, kNumGenerals> TokenF1(std::span<const ReviewSpans> gold,
                                             std::span<const ReviewSpans> pred);

}  // namespace haf::metrics

#endif  // HAF_METRICS_SPAN_F1_H_
