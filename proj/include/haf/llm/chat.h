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


#ifndef HAF_LLM_CHAT_H_
#define HAF_LLM_CHAT_H_

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "haf/core/error.h"
#include "json.hpp"

namespace haf::llm {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

// OpenAI-compatible chat completion request.
struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 1024;

  // Keys in fixed order; dump() is byte-stable.
  nlohmann::ordered_json to_json() const;
};

struct ChatResponse {
  std::string content;
};

// Transport or provider failure. The CLI maps this to exit code 3.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& what, bool retryable) : Error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// Implementations must allow concurrent Complete() calls.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatResponse Complete(const ChatRequest& request) = 0;
};

// Deterministic offline client. The responder sees the request and returns
// the reply text; it may throw ProviderError to simulate outages.
class MockChatClient : public ChatClient {
 public:
  using Responder = std::function<std::string(const ChatRequest&)>;
  explicit MockChatClient(Responder responder) : responder_(std::move(responder)) {}
  ChatResponse Complete(const ChatRequest& request) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return {responder_(request)};
  }
  long calls() const { return calls_.load(); }

 private:
  Responder responder_;
  std::atomic<long> calls_{0};
};

struct ProviderConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4o-mini";
  // Name of the environment variable holding the API key.
  std::string api_key_env = "HAF_LLM_API_KEY";
  double temperature = 0.0;
  int max_tokens = 1024;
  int timeout_seconds = 60;
  int max_attempts = 3;
  int parallelism = 4;

  // JSON object with any of the fields above. Environment overrides:
  // HAF_LLM_BASE_URL and HAF_LLM_MODEL. Throws ValidationError.
  static ProviderConfig FromJson(const nlohmann::json& j);
  static ProviderConfig Load(const std::string& path);
  nlohmann::ordered_json to_json() const;
};

// POSTs to {base_url}/chat/completions and returns choices[0].message.content.
// 429, 5xx and transport errors are retryable ProviderErrors; other non-2xx
// statuses are not.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(ProviderConfig config);
  ChatResponse Complete(const ChatRequest& request) override;

 private:
  ProviderConfig config_;
  std::string api_key_;
  std::string origin_;  // scheme://host[:port]
  std::string prefix_;  // path below the origin, no trailing slash
};

}  // namespace haf::llm

#endif  // HAF_LLM_CHAT_H_
