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


#include "haf/llm/prompt.h"

#include <cstdio>
#include <fstream>

namespace haf::llm {
namespace {

constexpr const char* kReviewPrefix = "Review: ";

std::string DefaultOutputInstruction() {
  std::string s =
      "Answer with a single JSON object and nothing else. Use exactly these keys, each with "
      "the value true or false:\n";
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    s += Taxonomy::slug(i);
    s += i + 1 < kNumLabels ? ", " : "\n";
  }
  s += "A specific aspect may be true only when its general aspect is true.";
  return s;
}

std::string DefaultSpanInstruction() {
  return "Copy the exact words of the review that express each aspect. Answer with a single "
         "JSON object and nothing else: {\"spans\": [{\"category\": \"PRICE\", \"text\": "
         "\"...\"}]}. category is one of PRODUCT, DELIVERY, PRICE, SERVICE. text must appear in "
         "the review verbatim; keep it as short as possible.";
}

General ParseCategory(const nlohmann::json& v) {
  if (!v.is_string()) throw ValidationError("span category must be a string");
  auto g = Taxonomy::find_general(v.get<std::string>());
  if (!g) throw ValidationError("unknown span category '" + v.get<std::string>() + "'");
  return *g;
}

}  // namespace

nlohmann::ordered_json SpansToJson(const std::vector<SpanAnswer>& spans) {
  nlohmann::ordered_json j;
  j["spans"] = nlohmann::ordered_json::array();
  for (const auto& s : spans) {
    nlohmann::ordered_json row;
    row["category"] = to_string(s.category);
    row["text"] = s.text;
    j["spans"].push_back(row);
  }
  return j;
}

std::string RenderTaxonomy() {
  std::string s;
  for (const auto& g : Taxonomy::generals()) {
    s += "- ";
    s += g.slug;
    s += ":";
    auto [b, e] = Taxonomy::children_of(g.id);
    for (int i = b; i < e; ++i) {
      s += " ";
      s += Taxonomy::slug(SpecificLabel(i));
      s += i + 1 < e ? "," : "";
    }
    s += "\n";
  }
  return s;
}

std::string Fnv1aHex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PromptTemplate::PromptTemplate(std::string name, std::string preamble,
                               std::string output_instruction, std::string span_instruction,
                               std::vector<FewShotExample> examples)
    : name_(std::move(name)),
      preamble_(std::move(preamble)),
      output_instruction_(std::move(output_instruction)),
      span_instruction_(std::move(span_instruction)),
      examples_(std::move(examples)) {
  if (preamble_.empty()) throw ValidationError("prompt preamble is empty");
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    const auto& ex = examples_[i];
    if (ex.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw ValidationError("few-shot example " + std::to_string(i) + " has blank text");
    }
    if (!ex.labels.is_consistent()) {
      throw HierarchyError("few-shot example " + std::to_string(i) +
                           " has labels that break the hierarchy");
    }
  }
  version_ = "p-" + Fnv1aHex(Content().dump());
}

PromptTemplate PromptTemplate::Default() {
  std::string preamble =
      "You label customer reviews of online purchases. The reviews mix Tagalog and English. "
      "Aspects form two levels: four general aspects, each with specific aspects below it.\n" +
      RenderTaxonomy() +
      "A review may mention several aspects or none. Mark only what the review talks about.";
  return PromptTemplate("default", std::move(preamble), DefaultOutputInstruction(),
                        DefaultSpanInstruction(), {});
}

PromptTemplate PromptTemplate::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("prompt template must be a JSON object");
  const auto fallback = Default();
  auto str = [&](const char* key, const std::string& dflt) {
    auto it = j.find(key);
    if (it == j.end()) return dflt;
    if (!it->is_string()) throw ValidationError(std::string("'") + key + "' must be a string");
    return it->get<std::string>();
  };
  std::vector<FewShotExample> examples;
  if (auto it = j.find("examples"); it != j.end()) {
    if (!it->is_array()) throw ValidationError("'examples' must be an array");
    for (const auto& ex : *it) {
      if (!ex.is_object() || !ex.contains("text") || !ex["text"].is_string()) {
        throw ValidationError("few-shot example needs a string 'text'");
      }
      FewShotExample out;
      out.text = ex["text"].get<std::string>();
      out.labels = LabelVector::FromJson(ex.value("labels", nlohmann::json::object()));
      if (auto spans = ex.find("spans"); spans != ex.end()) {
        out.spans.emplace();
        for (const auto& s : *spans) {
          if (!s.is_object() || !s.contains("text") || !s["text"].is_string()) {
            throw ValidationError("example span needs a string 'text'");
          }
          out.spans->push_back({ParseCategory(s.value("category", nlohmann::json())),
                                s["text"].get<std::string>()});
        }
      }
      examples.push_back(std::move(out));
    }
  }
  return PromptTemplate(str("name", "unnamed"), str("preamble", fallback.preamble()),
                        str("output_instruction", fallback.output_instruction()),
                        str("span_instruction", fallback.span_instruction()),
                        std::move(examples));
}

PromptTemplate PromptTemplate::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read prompt template '" + path + "'");
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

nlohmann::ordered_json PromptTemplate::Content() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["preamble"] = preamble_;
  j["output_instruction"] = output_instruction_;
  j["span_instruction"] = span_instruction_;
  j["examples"] = nlohmann::ordered_json::array();
  for (const auto& ex : examples_) {
    nlohmann::ordered_json row;
    row["text"] = ex.text;
    row["labels"] = ex.labels.to_json();
    if (ex.spans) row["spans"] = SpansToJson(*ex.spans)["spans"];
    j["examples"].push_back(row);
  }
  return j;
}

nlohmann::ordered_json PromptTemplate::to_json() const {
  auto j = Content();
  j["version"] = version_;
  return j;
}

ChatRequest BuildIdentificationRequest(const Review& review, const PromptTemplate& t,
                                       const ProviderConfig& config) {
  ChatRequest req;
  req.model = config.model;
  req.temperature = config.temperature;
  req.max_tokens = config.max_tokens;
  req.messages.push_back({"system", t.preamble() + "\n\n" + t.output_instruction()});
  for (const auto& ex : t.examples()) {
    req.messages.push_back({"user", kReviewPrefix + ex.text});
    req.messages.push_back({"assistant", ex.labels.to_json().dump()});
  }
  req.messages.push_back({"user", kReviewPrefix + review.text});
  return req;
}

ChatRequest BuildExtractionRequest(const Review& review, const PromptTemplate& t,
                                   const ProviderConfig& config,
                                   const std::optional<LabelVector>& identified) {
  ChatRequest req;
  req.model = config.model;
  req.temperature = config.temperature;
  req.max_tokens = config.max_tokens;
  req.messages.push_back({"system", t.preamble() + "\n\n" + t.span_instruction()});
  for (const auto& ex : t.examples()) {
    if (!ex.spans) continue;
    req.messages.push_back({"user", kReviewPrefix + ex.text});
    req.messages.push_back({"assistant", SpansToJson(*ex.spans).dump()});
  }
  std::string target = kReviewPrefix + review.text;
  if (identified) {
    std::string present;
    for (int g = 0; g < kNumGenerals; ++g) {
      if (!identified->test(g)) continue;
      if (!present.empty()) present += ", ";
      present += Taxonomy::slug(g);
    }
    target += "\nAspects present: " + (present.empty() ? std::string("none") : present);
  }
  req.messages.push_back({"user", target});
  return req;
}

}  // namespace haf::llm
