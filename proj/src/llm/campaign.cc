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


#include "haf/llm/campaign.h"

#include <filesystem>
#include <set>

#include "haf/corpus/jsonl_log.h"
#include "haf/corpus/split.h"

namespace haf::llm {
namespace {

constexpr const char* kSchema = "haf.llm_campaign";

const Annotation* Find(std::span<const Annotation> annotations, const std::string& id) {
  for (const auto& a : annotations) {
    if (a.review_id == id) return &a;
  }
  return nullptr;
}

}  // namespace

std::size_t AuditRound::correct() const {
  std::size_t n = 0;
  for (const auto& item : items) n += item.correct ? 1 : 0;
  return n;
}

double AuditRound::accuracy() const {
  if (items.empty()) return 0.0;
  return static_cast<double>(correct()) / static_cast<double>(items.size());
}

nlohmann::ordered_json AuditRound::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = "audit_round";
  j["round"] = round;
  j["prompt_version"] = prompt_version;
  j["seed"] = seed;
  j["audited"] = items.size();
  j["correct"] = correct();
  j["accuracy"] = accuracy();
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& item : items) {
    nlohmann::ordered_json row;
    row["review_id"] = item.review_id;
    row["llm_labels"] = item.llm_labels.to_json();
    row["correct"] = item.correct;
    j["items"].push_back(row);
  }
  return j;
}

AuditRound AuditRound::FromJson(const nlohmann::json& j) {
  try {
    AuditRound r;
    r.round = j.at("round").get<int>();
    r.prompt_version = j.at("prompt_version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& row : j.at("items")) {
      r.items.push_back({row.at("review_id").get<std::string>(),
                         LabelVector::FromJson(row.at("llm_labels")),
                         row.at("correct").get<bool>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed audit round: ") + e.what());
  }
}

AnnotationCampaign::AnnotationCampaign(std::string id, std::string corpus_ref)
    : id_(std::move(id)), corpus_ref_(std::move(corpus_ref)) {}

AnnotationCampaign AnnotationCampaign::Create(const std::string& path, std::string id,
                                              std::string corpus_ref) {
  if (std::filesystem::exists(path)) throw ValidationError("campaign '" + path + "' exists");
  AnnotationCampaign c(std::move(id), std::move(corpus_ref));
  nlohmann::ordered_json header;
  header["type"] = "campaign";
  header["schema"] = kSchema;
  header["version"] = 1;
  header["id"] = c.id_;
  header["corpus"] = c.corpus_ref_;
  corpus::AppendJsonLine(path, header);
  c.log_path_ = path;
  return c;
}

AnnotationCampaign AnnotationCampaign::Load(const std::string& path) {
  auto lines = corpus::ReadJsonLines(path);
  if (lines.empty() || lines[0].value.value("schema", "") != kSchema) {
    throw ValidationError("'" + path + "' is not a campaign log");
  }
  AnnotationCampaign c(lines[0].value.value("id", ""), lines[0].value.value("corpus", ""));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].value.value("type", "") != "audit_round") continue;
    auto round = AuditRound::FromJson(lines[i].value);
    if (round.round != static_cast<int>(c.rounds_.size()) + 1) {
      throw ValidationError(path + ":" + std::to_string(lines[i].line) + ": round " +
                            std::to_string(round.round) + " out of order");
    }
    c.rounds_.push_back(std::move(round));
  }
  c.log_path_ = path;
  return c;
}

std::vector<std::string> AnnotationCampaign::Unaudited(
    std::span<const Annotation> annotations) const {
  std::set<std::string> audited;
  for (const auto& r : rounds_) {
    for (const auto& item : r.items) audited.insert(item.review_id);
  }
  std::vector<std::string> out;
  for (const auto& a : annotations) {
    if (a.annotated() && !audited.count(a.review_id)) out.push_back(a.review_id);
  }
  return out;
}

std::vector<std::string> AnnotationCampaign::SampleForAudit(
    std::span<const Annotation> annotations, std::size_t sample_size, std::uint64_t seed) const {
  auto pool = Unaudited(annotations);
  if (sample_size == 0) throw ValidationError("audit sample size must be positive");
  if (sample_size > pool.size()) {
    throw ValidationError("audit sample of " + std::to_string(sample_size) + " exceeds " +
                          std::to_string(pool.size()) + " unaudited reviews");
  }
  auto perm = corpus::SeededPermutation(pool.size(), seed);
  perm.resize(sample_size);
  std::sort(perm.begin(), perm.end());
  std::vector<std::string> out;
  for (std::size_t i : perm) out.push_back(pool[i]);
  return out;
}

const AuditRound& AnnotationCampaign::RecordAuditRound(std::span<const Annotation> annotations,
                                                       const std::vector<std::string>& sample,
                                                       const std::map<std::string, bool>& verdicts,
                                                       std::uint64_t seed) {
  if (sample.empty()) throw ValidationError("audit round needs at least one review");
  if (verdicts.size() != sample.size()) {
    throw ValidationError("expected " + std::to_string(sample.size()) + " verdicts, got " +
                          std::to_string(verdicts.size()));
  }
  const auto pool = Unaudited(annotations);
  const std::set<std::string> open(pool.begin(), pool.end());
  AuditRound round;
  round.round = static_cast<int>(rounds_.size()) + 1;
  round.seed = seed;
  std::set<std::string> seen;
  for (const auto& id : sample) {
    if (!seen.insert(id).second) throw ValidationError("review '" + id + "' sampled twice");
    if (!open.count(id)) throw ValidationError("review '" + id + "' is not open for audit");
    auto v = verdicts.find(id);
    if (v == verdicts.end()) throw ValidationError("no verdict for review '" + id + "'");
    const Annotation* a = Find(annotations, id);
    if (round.prompt_version.empty()) round.prompt_version = a->prompt_version;
    round.items.push_back({id, *a->labels, v->second});
  }
  if (log_path_) corpus::AppendJsonLine(*log_path_, round.to_json());
  rounds_.push_back(std::move(round));
  return rounds_.back();
}

const AuditRound& AnnotationCampaign::RunAuditRound(std::span<const Annotation> annotations,
                                                    std::size_t sample_size, std::uint64_t seed,
                                                    const Judge& judge) {
  auto sample = SampleForAudit(annotations, sample_size, seed);
  std::map<std::string, bool> verdicts;
  for (const auto& id : sample) verdicts[id] = judge(id, *Find(annotations, id)->labels);
  return RecordAuditRound(annotations, sample, verdicts, seed);
}

}  // namespace haf::llm
