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


#ifndef HAF_LLM_PROMPT_H_
#define HAF_LLM_PROMPT_H_

#include <optional>
#include <string>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "haf/llm/chat.h"
#include "json.hpp"

namespace haf::llm {

// A span as the model states it: a category and a verbatim piece of text.
struct SpanAnswer {
  General category = General::kProduct;
  std::string text;

  friend bool operator==(const SpanAnswer&, const SpanAnswer&) = default;
};

nlohmann::ordered_json SpansToJson(const std::vector<SpanAnswer>& spans);

struct FewShotExample {
  std::string text;
  LabelVector labels;
  std::optional<std::vector<SpanAnswer>> spans;
};

class PromptTemplate {
 public:
  // Throws HierarchyError if an example's labels break the hierarchy and
  // ValidationError on an empty preamble or blank example text.
  PromptTemplate(std::string name, std::string preamble, std::string output_instruction,
                 std::string span_instruction, std::vector<FewShotExample> examples);

  // Preamble rendered from the taxonomy, built-in instructions, no examples.
  static PromptTemplate Default();

  // {"name", "preamble"?, "output_instruction"?, "span_instruction"?,
  //  "examples": [{"text", "labels": {...}, "spans"?: [{"category","text"}]}]}
  // Omitted strings take the Default() values.
  static PromptTemplate FromJson(const nlohmann::json& j);
  static PromptTemplate Load(const std::string& path);

  const std::string& name() const { return name_; }
  const std::string& preamble() const { return preamble_; }
  const std::string& output_instruction() const { return output_instruction_; }
  const std::string& span_instruction() const { return span_instruction_; }
  const std::vector<FewShotExample>& examples() const { return examples_; }

  // Content hash of every field, e.g. "p-3f2a...". Changes whenever any
  // field changes.
  const std::string& version() const { return version_; }

  nlohmann::ordered_json to_json() const;

 private:
  nlohmann::ordered_json Content() const;

  std::string name_;
  std::string preamble_;
  std::string output_instruction_;
  std::string span_instruction_;
  std::vector<FewShotExample> examples_;
  std::string version_;
};

// Taxonomy listing used by the default preamble.
std::string RenderTaxonomy();

// System message, then one user/assistant pair per example in order, then
// the target review. Deterministic.
ChatRequest BuildIdentificationRequest(const Review& review, const PromptTemplate& t,
                                       const ProviderConfig& config);

// Same layout for span extraction; only examples with spans are shown. When
// `identified` is given, its generals are listed in the target message.
ChatRequest BuildExtractionRequest(const Review& review, const PromptTemplate& t,
                                   const ProviderConfig& config,
                                   const std::optional<LabelVector>& identified = std::nullopt);

// 64-bit FNV-1a, lowercase hex.
std::string Fnv1aHex(std::string_view data);

}  // namespace haf::llm

#endif  // HAF_LLM_PROMPT_H_
