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


#ifndef HAF_LLM_CAMPAIGN_H_
#define HAF_LLM_CAMPAIGN_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haf/core/label_vector.h"
#include "haf/llm/annotator.h"
#include "json.hpp"

namespace haf::llm {

struct AuditItem {
  std::string review_id;
  LabelVector llm_labels;
  bool correct = false;

  friend bool operator==(const AuditItem&, const AuditItem&) = default;
};

struct AuditRound {
  int round = 0;  // 1-based
  std::string prompt_version;
  std::uint64_t seed = 0;
  std::vector<AuditItem> items;

  std::size_t correct() const;
  // correct / audited.
  double accuracy() const;

  nlohmann::ordered_json to_json() const;
  static AuditRound FromJson(const nlohmann::json& j);
  friend bool operator==(const AuditRound&, const AuditRound&) = default;
};

// LLM annotation campaign with human audit rounds. Rounds are append-only;
// when the campaign has a log path each round is appended to it as it is
// recorded.
class AnnotationCampaign {
 public:
  AnnotationCampaign(std::string id, std::string corpus_ref);

  // Writes the header line; throws ValidationError if the file exists.
  static AnnotationCampaign Create(const std::string& path, std::string id,
                                   std::string corpus_ref);
  // Replays a campaign log.
  static AnnotationCampaign Load(const std::string& path);

  const std::string& id() const { return id_; }
  const std::string& corpus_ref() const { return corpus_ref_; }
  const std::vector<AuditRound>& rounds() const { return rounds_; }

  // Annotated reviews no earlier round has audited, in input order.
  std::vector<std::string> Unaudited(std::span<const Annotation> annotations) const;

  // Seeded sample of `sample_size` unaudited review ids. Throws
  // ValidationError when sample_size is 0 or exceeds the unaudited count.
  std::vector<std::string> SampleForAudit(std::span<const Annotation> annotations,
                                          std::size_t sample_size, std::uint64_t seed) const;

  // Appends a round built from the sample and one verdict per sampled id.
  // Throws ValidationError when a verdict is missing or extra.
  const AuditRound& RecordAuditRound(std::span<const Annotation> annotations,
                                     const std::vector<std::string>& sample,
                                     const std::map<std::string, bool>& verdicts,
                                     std::uint64_t seed);

  using Judge = std::function<bool(const std::string& review_id, const LabelVector& labels)>;
  // Sample, ask `judge` about each item, record.
  const AuditRound& RunAuditRound(std::span<const Annotation> annotations,
                                  std::size_t sample_size, std::uint64_t seed, const Judge& judge);

 private:
  std::string id_;
  std::string corpus_ref_;
  std::vector<AuditRound> rounds_;
  std::optional<std::string> log_path_;
};

}  // namespace haf::llm

#endif  // HAF_LLM_CAMPAIGN_H_
