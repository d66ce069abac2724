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


#include "haf/llm/annotator.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace haf::llm {
namespace {

nlohmann::ordered_json Strings(const std::vector<std::string>& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

// Calls the client, returning the reply or recording the failure. Sets
// `stop` when the error is not worth retrying.
std::optional<std::string> Call(ChatClient& client, const ChatRequest& req,
                                std::vector<std::string>& failures, bool& provider, bool& stop) {
  try {
    auto reply = client.Complete(req).content;
    provider = false;
    return reply;
  } catch (const ProviderError& e) {
    failures.push_back(std::string("provider: ") + e.what());
    provider = true;
    stop = !e.retryable();
  }
  return std::nullopt;
}

}  // namespace

nlohmann::ordered_json Annotation::to_json() const {
  nlohmann::ordered_json j;
  j["review_id"] = review_id;
  j["prompt_version"] = prompt_version;
  j["annotated"] = annotated();
  j["labels"] = labels ? labels->to_json() : nlohmann::ordered_json(nullptr);
  j["attempts"] = attempts;
  j["repairs"] = repairs;
  j["failures"] = Strings(failures);
  j["provider_failure"] = provider_failure;
  if (spans || span_attempts > 0) {
    j["spans"] = nlohmann::ordered_json::array();
    if (spans) {
      for (const auto& s : *spans) j["spans"].push_back(s.to_json());
    } else {
      j["spans"] = nullptr;
    }
    j["dropped_spans"] = SpansToJson(dropped_spans)["spans"];
    j["span_attempts"] = span_attempts;
    j["span_failures"] = Strings(span_failures);
  }
  return j;
}

Annotation Annotation::FromJson(const nlohmann::json& j) {
  try {
    Annotation a;
    a.review_id = j.at("review_id").get<std::string>();
    a.prompt_version = j.value("prompt_version", "");
    if (j.contains("labels") && !j["labels"].is_null()) a.labels = LabelVector::FromJson(j["labels"]);
    a.attempts = j.value("attempts", 0);
    a.repairs = j.value("repairs", 0);
    a.failures = j.value("failures", std::vector<std::string>{});
    a.provider_failure = j.value("provider_failure", false);
    if (j.contains("spans") && !j["spans"].is_null()) {
      a.spans.emplace();
      for (const auto& s : j["spans"]) a.spans->push_back(AspectSpan::FromJson(s));
    }
    if (j.contains("dropped_spans")) {
      for (const auto& s : j["dropped_spans"]) {
        auto g = Taxonomy::find_general(s.at("category").get<std::string>());
        if (!g) throw ValidationError("unknown span category");
        a.dropped_spans.push_back({*g, s.at("text").get<std::string>()});
      }
    }
    a.span_attempts = j.value("span_attempts", 0);
    a.span_failures = j.value("span_failures", std::vector<std::string>{});
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed annotation: ") + e.what());
  }
}

Annotation AnnotateReview(const Review& review, const PromptTemplate& t, ChatClient& client,
                          const ProviderConfig& config, AnnotateOptions options) {
  Annotation out;
  out.review_id = review.id;
  out.prompt_version = t.version();
  const ChatRequest req = BuildIdentificationRequest(review, t, config);
  bool stop = false;
  while (!out.labels && !stop && out.attempts < config.max_attempts) {
    ++out.attempts;
    auto reply = Call(client, req, out.failures, out.provider_failure, stop);
    if (!reply) continue;
    auto parsed = ParseBooleanOutput(*reply);
    if (parsed.ok()) {
      out.labels = parsed.labels;
      out.repairs = parsed.repairs;
    } else {
      out.failures.push_back("parse: " + parsed.failure);
    }
  }
  if (out.labels) out.provider_failure = false;
  if (!out.labels || !options.extract_spans) return out;

  const ChatRequest span_req = BuildExtractionRequest(review, t, config, out.labels);
  stop = false;
  bool provider = false;
  while (!out.spans && !stop && out.span_attempts < config.max_attempts) {
    ++out.span_attempts;
    auto reply = Call(client, span_req, out.span_failures, provider, stop);
    if (!reply) continue;
    auto parsed = ParseSpanOutput(*reply);
    if (!parsed.ok()) {
      out.span_failures.push_back("parse: " + parsed.failure);
      continue;
    }
    auto located = LocateSpans(review, *parsed.spans);
    out.spans = std::move(located.spans);
    out.dropped_spans = std::move(located.dropped);
  }
  return out;
}

std::vector<Annotation> AnnotateAll(std::span<const Review> reviews, const PromptTemplate& t,
                                    ChatClient& client, const ProviderConfig& config,
                                    AnnotateOptions options) {
  std::vector<Annotation> out(reviews.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reviews.size(); i = next++) {
      out[i] = AnnotateReview(reviews[i], t, client, config, options);
    }
  };
  const std::size_t n = std::min<std::size_t>(std::max(1, config.parallelism), reviews.size());
  std::vector<std::thread> threads;
  for (std::size_t i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  return out;
}

LlmScorer::LlmScorer(const PromptTemplate& t, ChatClient& client, ProviderConfig config)
    : template_(t), client_(client), config_(std::move(config)) {
  for (LabelIndex i = 0; i < kNumLabels; ++i) labels_.push_back(i);
}

hierarchy::Scores LlmScorer::Score(const Review& review) const {
  auto a = AnnotateReview(review, template_, client_, config_);
  if (!a.labels) {
    throw hierarchy::ScorerError("review '" + review.id + "' unannotated after " +
                                 std::to_string(a.attempts) + " attempts");
  }
  hierarchy::Scores out(kNumLabels);
  for (LabelIndex i = 0; i < kNumLabels; ++i) out[i] = a.labels->test(i) ? 1.0 : 0.0;
  return out;
}

std::string AnnotationsToJsonl(std::span<const Annotation> annotations,
                               const nlohmann::ordered_json& meta) {
  nlohmann::ordered_json header;
  header["schema"] = kAnnotationsSchema;
  header["version"] = kAnnotationsVersion;
  for (const auto& [key, value] : meta.items()) {
    if (key != "schema" && key != "version") header[key] = value;
  }
  std::string out = header.dump() + "\n";
  for (const auto& a : annotations) out += a.to_json().dump() + "\n";
  return out;
}

void SaveAnnotations(const std::string& path, std::span<const Annotation> annotations,
                     const nlohmann::ordered_json& meta) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << AnnotationsToJsonl(annotations, meta);
  if (!out.flush()) throw ValidationError("cannot write '" + path + "'");
}

std::vector<Annotation> ParseAnnotationsJsonl(std::string_view text, const std::string& source) {
  std::vector<Annotation> out;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(where + "invalid JSON: " + e.what());
    }
    if (!header) {
      if (!row.is_object() || row.value("schema", "") != kAnnotationsSchema) {
        throw ValidationError(where + "expected a " + std::string(kAnnotationsSchema) + " header");
      }
      if (row.value("version", 0) != kAnnotationsVersion) {
        throw ValidationError(where + "unsupported version");
      }
      header = true;
      continue;
    }
    try {
      out.push_back(Annotation::FromJson(row));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
    if (!ids.insert(out.back().review_id).second) {
      throw ValidationError(where + "duplicate review id '" + out.back().review_id + "'");
    }
  }
  if (!header) throw ValidationError(source + ": empty annotation file");
  return out;
}

std::vector<Annotation> LoadAnnotations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseAnnotationsJsonl(buf.str(), path);
}

}  // namespace haf::llm
