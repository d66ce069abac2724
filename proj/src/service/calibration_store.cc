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


#include "haf/service/calibration_store.h"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>

#include "haf/corpus/jsonl_log.h"

namespace haf::service {
namespace {

std::string Str(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ValidationError(std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

int Int(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) {
    throw ValidationError(std::string("'") + key + "' must be an integer");
  }
  return it->get<int>();
}

nlohmann::ordered_json ReviewJson(const Review& r) {
  return {{"id", r.id}, {"text", r.text}};
}

}  // namespace

nlohmann::ordered_json HumanAnnotation::to_json() const {
  nlohmann::ordered_json j;
  j["round"] = round;
  j["annotator"] = annotator;
  j["review_id"] = review_id;
  j["labels"] = labels.to_json();
  if (spans) {
    j["spans"] = nlohmann::ordered_json::array();
    for (const auto& s : *spans) j["spans"].push_back(s.to_json());
  }
  return j;
}

HumanAnnotation HumanAnnotation::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("annotation must be an object");
  HumanAnnotation a;
  a.round = Int(j, "round");
  a.annotator = Str(j, "annotator");
  a.review_id = Str(j, "review_id");
  auto labels = j.find("labels");
  if (labels == j.end() || !labels->is_object()) {
    throw ValidationError("'labels' must be an object keyed by label slug");
  }
  a.labels = LabelVector::FromJson(*labels);
  if (auto spans = j.find("spans"); spans != j.end() && !spans->is_null()) {
    if (!spans->is_array()) throw ValidationError("'spans' must be an array");
    a.spans.emplace();
    for (const auto& s : *spans) a.spans->push_back(AspectSpan::FromJson(s));
  }
  return a;
}

std::vector<std::string> RoundSnapshot::annotators() const {
  std::set<std::string> names;
  for (const auto& a : annotations) names.insert(a.annotator);
  return {names.begin(), names.end()};
}

nlohmann::ordered_json RoundSnapshot::to_json(bool detail) const {
  nlohmann::ordered_json j;
  j["round"] = round;
  j["closed"] = closed;
  j["n_reviews"] = reviews.size();
  j["n_annotations"] = annotations.size();
  j["annotators"] = annotators();
  if (detail) {
    j["reviews"] = nlohmann::ordered_json::array();
    for (const auto& r : reviews) j["reviews"].push_back(ReviewJson(r));
    j["annotations"] = nlohmann::ordered_json::array();
    for (const auto& a : annotations) j["annotations"].push_back(a.to_json());
  }
  return j;
}

std::optional<int> CampaignSnapshot::open_round() const {
  if (rounds.empty() || rounds.back().closed) return std::nullopt;
  return rounds.back().round;
}

nlohmann::ordered_json CampaignSnapshot::to_json(bool detail) const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["name"] = name;
  j["n_rounds"] = rounds.size();
  auto open = open_round();
  j["open_round"] = open ? nlohmann::ordered_json(*open) : nlohmann::ordered_json();
  if (detail) {
    j["rounds"] = nlohmann::ordered_json::array();
    for (const auto& r : rounds) j["rounds"].push_back(r.to_json(false));
  }
  return j;
}

nlohmann::ordered_json NextReview::to_json() const {
  nlohmann::ordered_json j;
  j["round"] = round;
  j["done"] = !review.has_value();
  j["review"] = review ? ReviewJson(*review) : nlohmann::ordered_json();
  j["remaining"] = remaining;
  return j;
}

nlohmann::ordered_json RoundAgreement::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "haf.agreement";
  j["version"] = 1;
  j["round"] = round;
  j["scope"] = metrics::to_string(scope);
  j["available"] = available;
  if (!available) j["reason"] = reason;
  j["n_items"] = items.size();
  j["n_annotators_per_item"] = agreement.n_annotators;
  j["annotators"] = annotators;
  j["items"] = items;
  j["excluded_items"] = excluded;
  if (available) {
    nlohmann::ordered_json per_label = nlohmann::ordered_json::object();
    for (const auto& k : agreement.per_label) per_label[std::string(Taxonomy::slug(k.label))] = k.kappa;
    j["per_label"] = std::move(per_label);
    j["mean_kappa"] = agreement.mean;
  } else {
    j["per_label"] = nlohmann::ordered_json::object();
    j["mean_kappa"] = nullptr;
  }
  j["disagreements"] = nlohmann::ordered_json::array();
  for (const auto& d : disagreements) {
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (LabelIndex l : d.labels) labels.push_back(Taxonomy::slug(l));
    j["disagreements"].push_back({{"review_id", d.review_id}, {"labels", std::move(labels)}});
  }
  return j;
}

struct CalibrationStore::Campaign {
  std::string path;
  mutable std::shared_mutex mu;
  CampaignSnapshot data;
  std::set<std::tuple<int, std::string, std::string>> seen;  // (round, annotator, review)

  RoundSnapshot& Round(int round) {
    if (round < 1 || round > static_cast<int>(data.rounds.size())) {
      throw NotFoundError("campaign '" + data.id + "' has no round " + std::to_string(round));
    }
    return data.rounds[round - 1];
  }
  const RoundSnapshot& Round(int round) const { return const_cast<Campaign*>(this)->Round(round); }

  // Shared by live writes and log replay.
  void ApplyOpen(int round, std::vector<Review> reviews) {
    if (round != static_cast<int>(data.rounds.size()) + 1) {
      throw ValidationError("round " + std::to_string(round) + " opened out of order");
    }
    if (!data.rounds.empty()) data.rounds.back().closed = true;
    RoundSnapshot r;
    r.round = round;
    r.reviews = std::move(reviews);
    data.rounds.push_back(std::move(r));
  }

  void CheckAnnotation(const HumanAnnotation& a) const {
    const RoundSnapshot& r = Round(a.round);
    if (a.annotator.empty() || a.annotator.size() > 128) {
      throw ValidationError("annotator must be 1-128 characters");
    }
    auto review = std::find_if(r.reviews.begin(), r.reviews.end(),
                               [&](const Review& x) { return x.id == a.review_id; });
    if (review == r.reviews.end()) {
      throw NotFoundError("review '" + a.review_id + "' is not in round " +
                          std::to_string(a.round));
    }
    LabelVector::Strict(a.labels);
    if (a.spans) {
      for (const auto& s : *a.spans) {
        if (!s.IsValidFor(review->text)) {
          throw ValidationError("span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                                ") does not match the review text");
        }
        if (!a.labels.general(s.category)) {
          throw ValidationError("span category " + std::string(to_string(s.category)) +
                                " is not among the labels");
        }
      }
    }
    if (seen.count({a.round, a.annotator, a.review_id})) {
      throw ConflictError("annotator '" + a.annotator + "' already labeled review '" +
                          a.review_id + "' in round " + std::to_string(a.round));
    }
    if (r.closed) throw ConflictError("round " + std::to_string(a.round) + " is closed");
  }

  void ApplyAnnotation(HumanAnnotation a) {
    seen.insert({a.round, a.annotator, a.review_id});
    Round(a.round).annotations.push_back(std::move(a));
  }
};

bool CalibrationStore::IsValidId(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

namespace {

std::vector<Review> ReviewsFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw ValidationError("'reviews' must be an array");
  std::vector<Review> out;
  for (const auto& r : j) {
    if (!r.is_object()) throw ValidationError("review must be an object");
    out.push_back(Review{Str(r, "id"), Str(r, "text"), std::nullopt});
  }
  return out;
}

void CheckReviews(const std::vector<Review>& reviews) {
  if (reviews.empty()) throw ValidationError("a round needs at least one review");
  std::set<std::string> ids;
  for (const auto& r : reviews) {
    r.Validate();
    if (!ids.insert(r.id).second) throw ValidationError("duplicate review id '" + r.id + "'");
  }
}

}  // namespace

CalibrationStore::CalibrationStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (!std::filesystem::is_directory(dir_)) {
    throw ValidationError("cannot use '" + dir_.string() + "' as a store directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const std::string path = file.string();
    auto lines = corpus::ReadJsonLines(path);
    if (lines.empty() || !lines[0].value.is_object() ||
        lines[0].value.value("schema", "") != kCalibrationSchema) {
      continue;  // not a calibration log
    }
    auto c = std::make_unique<Campaign>();
    c->path = path;
    try {
      const auto& header = lines[0].value;
      if (header.value("version", 0) != kCalibrationVersion) {
        throw ValidationError("unsupported version");
      }
      c->data.id = Str(header, "id");
      c->data.name = header.value("name", "");
      for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ev = lines[i].value;
        try {
          const std::string type = Str(ev, "type");
          if (type == "round_opened") {
            c->ApplyOpen(Int(ev, "round"), ReviewsFromJson(ev.at("reviews")));
          } else if (type == "round_closed") {
            c->Round(Int(ev, "round")).closed = true;
          } else if (type == "annotation") {
            auto a = HumanAnnotation::FromJson(ev);
            c->CheckAnnotation(a);
            c->ApplyAnnotation(std::move(a));
          } else {
            throw ValidationError("unknown event type '" + type + "'");
          }
        } catch (const Error& e) {
          throw ValidationError("line " + std::to_string(lines[i].line) + ": " + e.what());
        }
      }
    } catch (const Error& e) {
      throw ValidationError(path + ": " + e.what());
    }
    if (campaigns_.count(c->data.id)) {
      throw ValidationError(path + ": duplicate campaign id '" + c->data.id + "'");
    }
    campaigns_.emplace(c->data.id, std::move(c));
  }
}

CalibrationStore::~CalibrationStore() = default;

CalibrationStore::Campaign& CalibrationStore::Find(const std::string& campaign) const {
  std::shared_lock lock(mu_);
  auto it = campaigns_.find(campaign);
  if (it == campaigns_.end()) throw NotFoundError("unknown campaign '" + campaign + "'");
  return *it->second;
}

std::vector<CampaignSnapshot> CalibrationStore::List() const {
  std::shared_lock lock(mu_);
  std::vector<CampaignSnapshot> out;
  for (const auto& [id, c] : campaigns_) {
    std::shared_lock inner(c->mu);
    out.push_back(c->data);
  }
  return out;
}

CampaignSnapshot CalibrationStore::Get(const std::string& campaign) const {
  Campaign& c = Find(campaign);
  std::shared_lock lock(c.mu);
  return c.data;
}

RoundSnapshot CalibrationStore::GetRound(const std::string& campaign, int round) const {
  Campaign& c = Find(campaign);
  std::shared_lock lock(c.mu);
  return c.Round(round);
}

CampaignSnapshot CalibrationStore::Create(const std::string& id, const std::string& name) {
  if (!IsValidId(id)) throw ValidationError("campaign id must be 1-64 characters of [A-Za-z0-9_-]");
  std::unique_lock lock(mu_);
  const auto path = (dir_ / (id + ".jsonl")).string();
  if (campaigns_.count(id) || std::filesystem::exists(path)) {
    throw ConflictError("campaign '" + id + "' already exists");
  }
  nlohmann::ordered_json header;
  header["schema"] = kCalibrationSchema;
  header["version"] = kCalibrationVersion;
  header["id"] = id;
  header["name"] = name;
  corpus::AppendJsonLine(path, header);
  auto c = std::make_unique<Campaign>();
  c->path = path;
  c->data.id = id;
  c->data.name = name;
  CampaignSnapshot out = c->data;
  campaigns_.emplace(id, std::move(c));
  return out;
}

RoundSnapshot CalibrationStore::OpenRound(const std::string& campaign, std::vector<Review> reviews) {
  CheckReviews(reviews);
  Campaign& c = Find(campaign);
  std::unique_lock lock(c.mu);
  const int round = static_cast<int>(c.data.rounds.size()) + 1;
  nlohmann::ordered_json ev;
  ev["type"] = "round_opened";
  ev["round"] = round;
  ev["reviews"] = nlohmann::ordered_json::array();
  for (const auto& r : reviews) ev["reviews"].push_back(ReviewJson(r));
  corpus::AppendJsonLine(c.path, ev);
  for (auto& r : reviews) r.source.reset();
  c.ApplyOpen(round, std::move(reviews));
  return c.data.rounds.back();
}

void CalibrationStore::CloseRound(const std::string& campaign, int round) {
  Campaign& c = Find(campaign);
  std::unique_lock lock(c.mu);
  RoundSnapshot& r = c.Round(round);
  if (r.closed) throw ConflictError("round " + std::to_string(round) + " is already closed");
  corpus::AppendJsonLine(c.path, {{"type", "round_closed"}, {"round", round}});
  r.closed = true;
}

HumanAnnotation CalibrationStore::Annotate(const std::string& campaign, HumanAnnotation annotation) {
  Campaign& c = Find(campaign);
  std::unique_lock lock(c.mu);
  c.CheckAnnotation(annotation);
  nlohmann::ordered_json ev;
  ev["type"] = "annotation";
  const auto body = annotation.to_json();
  for (const auto& [key, value] : body.items()) ev[key] = value;
  corpus::AppendJsonLine(c.path, ev);
  c.ApplyAnnotation(annotation);
  return annotation;
}

NextReview CalibrationStore::NextUnlabeled(const std::string& campaign,
                                           const std::string& annotator,
                                           std::optional<int> round) const {
  Campaign& c = Find(campaign);
  std::shared_lock lock(c.mu);
  if (!round) {
    round = c.data.open_round();
    if (!round) throw NotFoundError("campaign '" + campaign + "' has no open round");
  }
  const RoundSnapshot& r = c.Round(*round);
  NextReview out;
  out.round = *round;
  for (const auto& review : r.reviews) {
    if (c.seen.count({*round, annotator, review.id})) continue;
    if (!out.review) out.review = review;
    ++out.remaining;
  }
  return out;
}

RoundAgreement CalibrationStore::Agreement(const std::string& campaign, int round,
                                           metrics::Scope scope) const {
  Campaign& c = Find(campaign);
  std::shared_lock lock(c.mu);
  const RoundSnapshot& r = c.Round(round);
  RoundAgreement out;
  out.round = round;
  out.scope = scope;

  std::map<std::string, std::vector<const HumanAnnotation*>> by_review;
  for (const auto& a : r.annotations) by_review[a.review_id].push_back(&a);
  std::size_t n = 0;
  for (const auto& [id, list] : by_review) n = std::max(n, list.size());
  if (n < 2) {
    out.reason = "no review has annotations from two or more annotators";
    for (const auto& review : r.reviews) {
      if (by_review.count(review.id)) out.excluded.push_back(review.id);
    }
    return out;
  }

  const auto labels = metrics::LabelsIn(scope);
  std::vector<std::vector<LabelVector>> items;
  std::set<std::string> annotators;
  for (const auto& review : r.reviews) {
    auto it = by_review.find(review.id);
    if (it == by_review.end()) continue;
    if (it->second.size() != n) {
      out.excluded.push_back(review.id);
      continue;
    }
    out.items.push_back(review.id);
    std::vector<LabelVector> ratings;
    for (const HumanAnnotation* a : it->second) {
      ratings.push_back(a->labels);
      annotators.insert(a->annotator);
    }
    ItemDisagreement d{review.id, {}};
    for (LabelIndex l : labels) {
      bool split = std::any_of(ratings.begin(), ratings.end(),
                               [&](const LabelVector& v) { return v.test(l) != ratings[0].test(l); });
      if (split) d.labels.push_back(l);
    }
    if (!d.labels.empty()) out.disagreements.push_back(std::move(d));
    items.push_back(std::move(ratings));
  }
  out.annotators.assign(annotators.begin(), annotators.end());
  out.agreement = metrics::MultiLabelFleiss(items, labels);
  out.available = true;
  return out;
}

}  // namespace haf::service
