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


#ifndef HAF_LLM_MOCK_H_
#define HAF_LLM_MOCK_H_

#include <string>

#include "haf/llm/chat.h"
#include "haf/llm/prompt.h"
#include "haf/rules/rule_config.h"

namespace haf::llm {

// Offline stand-in for a provider: answers identification requests with the
// rule engine's labels and extraction requests with the surfaces of its
// matches, in the wire formats a real model is asked for. Requests are told
// apart by the system message ending with the template's span instruction.
// Keeps references to both arguments.
MockChatClient::Responder RuleBackedResponder(const rules::RuleConfig& config,
                                              const PromptTemplate& t);

// Text of the target review in a request built by this library.
std::string TargetText(const ChatRequest& request);

}  // namespace haf::llm

#endif  // HAF_LLM_MOCK_H_
