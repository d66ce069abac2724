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


#include "haf/llm/mock.h"

#include "haf/rules/tagger.h"

namespace haf::llm {

std::string TargetText(const ChatRequest& request) {
  if (request.messages.empty()) return "";
  std::string text = request.messages.back().content;
  constexpr std::string_view kPrefix = "Review: ";
  if (text.rfind(kPrefix, 0) == 0) text.erase(0, kPrefix.size());
  if (auto cut = text.rfind("\nAspects present: "); cut != std::string::npos) text.resize(cut);
  return text;
}

MockChatClient::Responder RuleBackedResponder(const rules::RuleConfig& config,
                                              const PromptTemplate& t) {
  return [&config, &t](const ChatRequest& request) -> std::string {
    const Review review{"mock", TargetText(request), std::nullopt};
    const auto result = rules::TagReview(review, config);
    const std::string& system = request.messages.empty() ? "" : request.messages[0].content;
    const auto& span_instruction = t.span_instruction();
    const bool extraction = system.size() >= span_instruction.size() &&
                            system.compare(system.size() - span_instruction.size(),
                                           span_instruction.size(), span_instruction) == 0;
    if (!extraction) return result.labels.to_json().dump();
    std::vector<SpanAnswer> spans;
    for (const auto& m : result.matches) spans.push_back({m.span.category, m.span.surface});
    return SpansToJson(spans).dump();
  };
}

}  // namespace haf::llm
