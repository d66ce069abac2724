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

#include "haf/metrics/span_f1.h"

#include <unicode/uchar.h>

#include <algorithm>
#include <map>

#include "haf/core/error.h"

namespace haf::metrics {
namespace {

using Bag = std::map<std::string, std::int64_t>;
using Bags = std::array<Bag, kNumGenerals>;

std::map<std::string, Bags> Collect(std::span<const ReviewSpans> reviews, const char* side) {
  std::map<std::string, Bags> out;
  for (const auto& r : reviews) {
    auto [it, inserted] = out.try_emplace(r.review_id);
    if (!inserted) {
      throw ValidationError(std::string("duplicate review id '") + r.review_id + "' in " +
                            side + " spans");
    }
    for (const auto& s : r.spans) {
      for (auto& t : SpanTokens(s.surface)) ++it->second[static_cast<int>(s.category)][t];
    }
  }
  return out;
}

void Score(const Bag& gold, const Bag& pred, Confusion& c) {
  for (const auto& [token, n] : gold) {
    auto it = pred.find(token);
    const std::int64_t m = it == pred.end() ? 0 : it->second;
    c.tp += std::min(n, m);
    c.fn += n - std::min(n, m);
  }
  for (const auto& [token, m] : pred) {
    auto it = gold.find(token);
    const std::int64_t n = it == gold.end() ? 0 : it->second;
    c.fp += m - std::min(n, m);
  }
}

}  // namespace

std::vector<std::string> SpanTokens(std::string_view surface) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : utf8::Decode(surface)) {
    const auto c = static_cast<UChar32>(cp);
    if (u_isUWhiteSpace(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (u_ispunct(c)) continue;
    utf8::Append(static_cast<char32_t>(u_tolower(c)), current);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::array<TokenF1Row, kNumGenerals> TokenF1(std::span<const ReviewSpans> gold,
                                             std::span<const ReviewSpans> pred) {
  const auto gold_bags = Collect(gold, "gold");
  const auto pred_bags = Collect(pred, "pred");
  std::array<TokenF1Row, kNumGenerals> rows;
  for (int g = 0; g < kNumGenerals; ++g) rows[g].category = static_cast<General>(g);

  const Bags empty;
  for (const auto& [id, bags] : gold_bags) {
    auto it = pred_bags.find(id);
    const Bags& other = it == pred_bags.end() ? empty : it->second;
    for (int g = 0; g < kNumGenerals; ++g) Score(bags[g], other[g], rows[g].counts);
  }
  for (const auto& [id, bags] : pred_bags) {
    if (gold_bags.count(id)) continue;
    for (int g = 0; g < kNumGenerals; ++g) Score(empty[g], bags[g], rows[g].counts);
  }
  for (auto& row : rows) row.prf = PrfFromCounts(row.counts);
  return rows;
}

}  // namespace haf::metrics
