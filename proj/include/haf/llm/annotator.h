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


#ifndef HAF_LLM_ANNOTATOR_H_
#define HAF_LLM_ANNOTATOR_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "haf/hierarchy/scorer.h"
#include "haf/llm/chat.h"
#include "haf/llm/parse.h"
#include "haf/llm/prompt.h"
#include "json.hpp"

namespace haf::llm {

struct AnnotateOptions {
  bool extract_spans = false;
};

// Outcome for one review. A review whose attempts all failed has no labels
// and is never given a default.
struct Annotation {
  std::string review_id;
  std::string prompt_version;
  std::optional<LabelVector> labels;
  int attempts = 0;
  int repairs = 0;
  // One entry per failed attempt, "provider: ..." or "parse: ...".
  std::vector<std::string> failures;
  // True when the last failure came from the provider rather than the parser.
  bool provider_failure = false;

  std::optional<std::vector<AspectSpan>> spans;
  std::vector<SpanAnswer> dropped_spans;
  int span_attempts = 0;
  std::vector<std::string> span_failures;

  bool annotated() const { return labels.has_value(); }

  nlohmann::ordered_json to_json() const;
  // Throws ValidationError.
  static Annotation FromJson(const nlohmann::json& j);
};

// Up to config.max_attempts identification calls; parse failures and
// retryable provider errors are retried, a non-retryable one ends the loop.
Annotation AnnotateReview(const Review& review, const PromptTemplate& t, ChatClient& client,
                          const ProviderConfig& config, AnnotateOptions options = {});

// Annotates in parallel (config.parallelism workers). Results follow input
// order.
std::vector<Annotation> AnnotateAll(std::span<const Review> reviews, const PromptTemplate& t,
                                    ChatClient& client, const ProviderConfig& config,
                                    AnnotateOptions options = {});

// The identification pipeline as a 0/1 scorer over all 25 labels. Throws
// ScorerError when a review ends unannotated.
class LlmScorer : public hierarchy::LabelScorer {
 public:
  LlmScorer(const PromptTemplate& t, ChatClient& client, ProviderConfig config);
  std::span<const LabelIndex> labels() const override { return labels_; }
  hierarchy::Scores Score(const Review& review) const override;

 private:
  const PromptTemplate& template_;
  ChatClient& client_;
  ProviderConfig config_;
  std::vector<LabelIndex> labels_;
};

inline constexpr std::string_view kAnnotationsSchema = "haf.llm_annotations";
inline constexpr int kAnnotationsVersion = 1;

// Annotation file: a header line {"schema", "version", ...meta}, then one
// Annotation per line.
std::string AnnotationsToJsonl(std::span<const Annotation> annotations,
                               const nlohmann::ordered_json& meta = nlohmann::ordered_json::object());
void SaveAnnotations(const std::string& path, std::span<const Annotation> annotations,
                     const nlohmann::ordered_json& meta = nlohmann::ordered_json::object());
// Throws ValidationError naming the line on a bad header, a bad row or a
// duplicate review id.
std::vector<Annotation> ParseAnnotationsJsonl(std::string_view text, const std::string& source);
std::vector<Annotation> LoadAnnotations(const std::string& path);

}  // namespace haf::llm

#endif  // HAF_LLM_ANNOTATOR_H_
