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


#ifndef HAF_CORPUS_SPLIT_H_
#define HAF_CORPUS_SPLIT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "haf/corpus/corpus.h"

namespace haf::corpus {

struct SplitSpec {
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  double test_fraction = 0.2;
  // Split positives and negatives of this label separately.
  std::optional<LabelIndex> stratify_by;

  // Throws ValidationError unless both fractions lie in (0, 1) and sum to 1.
  void Validate() const;
};

struct Split {
  Corpus train;
  Corpus test;
};

// Deterministic for a given seed on every platform: the shuffle uses
// mt19937_64 with rejection sampling rather than std distributions. Both
// halves keep corpus order. Non-stratified test size is round(N * test),
// clamped to [1, N - 1]; stratified splits round each stratum.
Split SplitCorpus(const Corpus& corpus, const SplitSpec& spec);

// Deterministic permutation of [0, n).
std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed);

struct LabelDistribution {
  std::size_t n = 0;
  std::array<std::int64_t, kNumLabels> positives{};
  std::array<double, kNumLabels> prevalence{};
  // cooccurrence[i][j] = reviews with both labels; diagonal = positives.
  std::array<std::array<std::int64_t, kNumLabels>, kNumLabels> cooccurrence{};

  nlohmann::ordered_json to_json() const;
};

// Throws ValidationError if the corpus is empty or any entry lacks gold.
LabelDistribution ComputeLabelDistribution(const Corpus& corpus);

}  // namespace haf::corpus

#endif  // HAF_CORPUS_SPLIT_H_
