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


#include "haf/llm/chat.h"

#include <cstdlib>
#include <fstream>

#include "httplib.h"

namespace haf::llm {

nlohmann::ordered_json ChatRequest::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : messages) {
    nlohmann::ordered_json msg;
    msg["role"] = m.role;
    msg["content"] = m.content;
    j["messages"].push_back(msg);
  }
  j["temperature"] = temperature;
  j["max_tokens"] = max_tokens;
  return j;
}

ProviderConfig ProviderConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("provider config must be a JSON object");
  ProviderConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "base_url") {
        c.base_url = value.get<std::string>();
      } else if (key == "model") {
        c.model = value.get<std::string>();
      } else if (key == "api_key_env") {
        c.api_key_env = value.get<std::string>();
      } else if (key == "temperature") {
        c.temperature = value.get<double>();
      } else if (key == "max_tokens") {
        c.max_tokens = value.get<int>();
      } else if (key == "timeout_seconds") {
        c.timeout_seconds = value.get<int>();
      } else if (key == "max_attempts") {
        c.max_attempts = value.get<int>();
      } else if (key == "parallelism") {
        c.parallelism = value.get<int>();
      } else if (key != "description") {
        throw ValidationError("unknown provider config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ValidationError(std::string("provider config: ") + e.what());
  }
  if (const char* url = std::getenv("HAF_LLM_BASE_URL"); url && *url) c.base_url = url;
  if (const char* model = std::getenv("HAF_LLM_MODEL"); model && *model) c.model = model;
  if (c.max_attempts < 1) throw ValidationError("max_attempts must be at least 1");
  if (c.parallelism < 1) throw ValidationError("parallelism must be at least 1");
  if (c.timeout_seconds < 1) throw ValidationError("timeout_seconds must be at least 1");
  return c;
}

ProviderConfig ProviderConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read provider config '" + path + "'");
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

nlohmann::ordered_json ProviderConfig::to_json() const {
  nlohmann::ordered_json j;
  j["base_url"] = base_url;
  j["model"] = model;
  j["api_key_env"] = api_key_env;
  j["temperature"] = temperature;
  j["max_tokens"] = max_tokens;
  j["timeout_seconds"] = timeout_seconds;
  j["max_attempts"] = max_attempts;
  j["parallelism"] = parallelism;
  return j;
}

HttpChatClient::HttpChatClient(ProviderConfig config) : config_(std::move(config)) {
  if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("base_url needs a scheme: '" + config_.base_url + "'");
  }
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  origin_ = config_.base_url.substr(0, path_start);
  if (path_start != std::string::npos) prefix_ = config_.base_url.substr(path_start);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

ChatResponse HttpChatClient::Complete(const ChatRequest& request) {
  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(prefix_ + "/chat/completions", headers, request.to_json().dump(),
                         "application/json");
  if (!res) {
    throw ProviderError("request to " + origin_ + " failed: " + httplib::to_string(res.error()),
                        true);
  }
  if (res->status < 200 || res->status >= 300) {
    const bool retryable = res->status == 429 || res->status >= 500;
    throw ProviderError("provider returned HTTP " + std::to_string(res->status) + ": " +
                            res->body.substr(0, 200),
                        retryable);
  }
  try {
    auto body = nlohmann::json::parse(res->body);
    return {body.at("choices").at(0).at("message").at("content").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("malformed provider response: ") + e.what(), true);
  }
}

}  // namespace haf::llm
