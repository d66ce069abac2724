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


#ifndef HAF_CORPUS_ALIGN_H_
#define HAF_CORPUS_ALIGN_H_

#include <string>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "haf/corpus/corpus.h"

namespace haf::corpus {

// Gold and predicted vectors joined by review id, in gold order.
struct AlignedLabels {
  std::vector<std::string> ids;
  std::vector<LabelVector> gold;
  std::vector<LabelVector> pred;
};

// Every gold entry needs a gold vector and every id must appear in both
// corpora exactly once. Throws CorpusError listing each missing or extra id.
AlignedLabels AlignLabels(const Corpus& gold, const Corpus& pred);

// Gold and predicted spans per review, in gold order. Entries without spans
// count as having none.
struct AlignedSpans {
  std::vector<std::string> ids;
  std::vector<std::vector<AspectSpan>> gold;
  std::vector<std::vector<AspectSpan>> pred;
};

AlignedSpans AlignSpans(const Corpus& gold, const Corpus& pred);

}  // namespace haf::corpus

#endif  // HAF_CORPUS_ALIGN_H_
