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


#ifndef HAF_SERVICE_CALIBRATION_STORE_H_
#define HAF_SERVICE_CALIBRATION_STORE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/error.h"
#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "haf/metrics/fleiss.h"
#include "haf/metrics/multilabel.h"
#include "json.hpp"

namespace haf::service {

inline constexpr std::string_view kCalibrationSchema = "haf.calibration_campaign";
inline constexpr int kCalibrationVersion = 1;

// Unknown campaign, round or review. Maps to HTTP 404.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Duplicate campaign or annotation, or a write to a closed round. Maps to
// HTTP 409.
class ConflictError : public Error {
 public:
  using Error::Error;
};

// One annotator's labels for one review in one round.
struct HumanAnnotation {
  int round = 0;
  std::string annotator;
  std::string review_id;
  LabelVector labels;
  std::optional<std::vector<AspectSpan>> spans;

  nlohmann::ordered_json to_json() const;
  // Throws LabelError on bad slugs and ValidationError on anything else
  // malformed. Hierarchy is not checked here.
  static HumanAnnotation FromJson(const nlohmann::json& j);
};

struct RoundSnapshot {
  int round = 0;
  bool closed = false;
  std::vector<Review> reviews;
  std::vector<HumanAnnotation> annotations;

  std::vector<std::string> annotators() const;
  nlohmann::ordered_json to_json(bool detail) const;
};

struct CampaignSnapshot {
  std::string id;
  std::string name;
  std::vector<RoundSnapshot> rounds;

  // Latest round if it is still open.
  std::optional<int> open_round() const;
  nlohmann::ordered_json to_json(bool detail) const;
};

struct NextReview {
  int round = 0;
  std::optional<Review> review;  // empty when the annotator is done
  std::size_t remaining = 0;     // unlabeled reviews, including this one
  nlohmann::ordered_json to_json() const;
};

struct ItemDisagreement {
  std::string review_id;
  std::vector<LabelIndex> labels;  // labels the annotators split on
};

// Agreement for one round. Fleiss' kappa needs the same number of raters per
// item, so only reviews carrying the round's largest annotation count are
// scored; the rest are listed as excluded.
struct RoundAgreement {
  int round = 0;
  metrics::Scope scope = metrics::Scope::kAll;
  bool available = false;
  std::string reason;  // set when unavailable
  std::vector<std::string> items;
  std::vector<std::string> excluded;
  std::vector<std::string> annotators;
  metrics::MultiLabelAgreement agreement;
  std::vector<ItemDisagreement> disagreements;

  nlohmann::ordered_json to_json() const;
};

// Human calibration campaigns. Each campaign is one append-only JSONL file in
// the store directory: a header line, then round_opened, round_closed and
// annotation events. The in-memory state is only updated after the event is
// on disk, and the directory is replayed on construction.
//
// Reads run concurrently. Writes to one campaign are serialized.
class CalibrationStore {
 public:
  // Creates the directory if needed and loads every campaign log in it.
  // Throws ValidationError on an unreadable or corrupt log.
  explicit CalibrationStore(std::filesystem::path dir);
  ~CalibrationStore();
  CalibrationStore(const CalibrationStore&) = delete;
  CalibrationStore& operator=(const CalibrationStore&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

  std::vector<CampaignSnapshot> List() const;
  CampaignSnapshot Get(const std::string& campaign) const;
  RoundSnapshot GetRound(const std::string& campaign, int round) const;

  // Ids are 1-64 characters of [A-Za-z0-9_-]. Throws ConflictError when the
  // id is taken.
  CampaignSnapshot Create(const std::string& id, const std::string& name);

  // Opens round N+1 over `reviews` and closes the current round, if open.
  // Review ids must be unique and texts non-blank.
  RoundSnapshot OpenRound(const std::string& campaign, std::vector<Review> reviews);
  void CloseRound(const std::string& campaign, int round);

  // Throws HierarchyError for inconsistent labels, ValidationError for spans
  // that do not fit the review text, NotFoundError for an unknown round or a
  // review outside the round and ConflictError for a duplicate
  // (round, annotator, review) or a closed round.
  HumanAnnotation Annotate(const std::string& campaign, HumanAnnotation annotation);

  // First review of the round, in round order, the annotator has not
  // labeled. `round` defaults to the open round.
  NextReview NextUnlabeled(const std::string& campaign, const std::string& annotator,
                           std::optional<int> round = std::nullopt) const;

  // Kappa is computed by metrics::MultiLabelFleiss on the stored vectors.
  RoundAgreement Agreement(const std::string& campaign, int round,
                           metrics::Scope scope = metrics::Scope::kAll) const;

  static bool IsValidId(std::string_view id);

 private:
  struct Campaign;
  Campaign& Find(const std::string& campaign) const;

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<Campaign>> campaigns_;
};

}  // namespace haf::service

#endif  // HAF_SERVICE_CALIBRATION_STORE_H_
