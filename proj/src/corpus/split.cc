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


#include "haf/corpus/split.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace haf::corpus {
namespace {

// Uniform integer in [0, bound) by rejection, so results do not depend on
// the standard library's distribution implementation.
std::uint64_t Below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::size_t RoundHalfUp(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

Corpus Pick(const Corpus& corpus, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  std::vector<Entry> entries;
  entries.reserve(idx.size());
  for (std::size_t i : idx) entries.push_back(corpus[i]);
  return Corpus(std::move(entries), corpus.metadata());
}

}  // namespace

void SplitSpec::Validate() const {
  auto open_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!open_unit(train_fraction) || !open_unit(test_fraction)) {
    throw ValidationError("split fractions must lie in (0, 1)");
  }
  if (std::abs(train_fraction + test_fraction - 1.0) > 1e-9) {
    throw ValidationError("split fractions must sum to 1");
  }
}

std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[Below(rng, i)]);
  return p;
}

Split SplitCorpus(const Corpus& corpus, const SplitSpec& spec) {
  spec.Validate();
  const std::size_t n = corpus.size();
  if (n < 2) throw ValidationError("split needs at least two reviews");
  const auto order = SeededPermutation(n, spec.seed);

  std::vector<std::size_t> train, test;
  if (!spec.stratify_by) {
    std::size_t k = std::clamp<std::size_t>(RoundHalfUp(n * spec.test_fraction), 1, n - 1);
    test.assign(order.begin(), order.begin() + k);
    train.assign(order.begin() + k, order.end());
  } else {
    std::vector<std::size_t> strata[2];
    for (std::size_t i : order) {
      const auto& gold = corpus[i].gold;
      if (!gold) {
        throw ValidationError("stratified split needs labels; review '" + corpus[i].review.id +
                              "' has none");
      }
      strata[gold->test(*spec.stratify_by) ? 1 : 0].push_back(i);
    }
    for (const auto& s : strata) {
      const std::size_t k = RoundHalfUp(s.size() * spec.test_fraction);
      test.insert(test.end(), s.begin(), s.begin() + k);
      train.insert(train.end(), s.begin() + k, s.end());
    }
    if (test.empty() || train.empty()) {
      throw ValidationError("stratified split left one side empty");
    }
  }
  return {Pick(corpus, std::move(train)), Pick(corpus, std::move(test))};
}

nlohmann::ordered_json LabelDistribution::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "haf.label_distribution";
  j["n"] = n;
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    nlohmann::ordered_json row;
    row["positives"] = positives[i];
    row["prevalence"] = prevalence[i];
    labels[std::string(Taxonomy::slug(i))] = row;
  }
  j["labels"] = labels;
  nlohmann::ordered_json order = nlohmann::ordered_json::array();
  for (LabelIndex i = 0; i < kNumLabels; ++i) order.push_back(Taxonomy::slug(i));
  j["label_order"] = order;
  j["cooccurrence"] = cooccurrence;
  return j;
}

LabelDistribution ComputeLabelDistribution(const Corpus& corpus) {
  if (corpus.empty()) throw ValidationError("label distribution needs a non-empty corpus");
  LabelDistribution d;
  d.n = corpus.size();
  for (const auto& v : corpus.GoldLabels()) {
    for (LabelIndex i = 0; i < kNumLabels; ++i) {
      if (!v.test(i)) continue;
      ++d.positives[i];
      for (LabelIndex j = 0; j < kNumLabels; ++j) d.cooccurrence[i][j] += v.test(j) ? 1 : 0;
    }
  }
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    d.prevalence[i] = static_cast<double>(d.positives[i]) / static_cast<double>(d.n);
  }
  return d;
}

}  // namespace haf::corpus
