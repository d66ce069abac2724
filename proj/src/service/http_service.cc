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


#include "haf/service/http_service.h"

#include <cstdlib>
#include <functional>
#include <set>

#include "haf/corpus/align.h"
#include "haf/corpus/split.h"
#include "haf/metrics/report.h"
#include "haf/rules/tagger.h"
#include "httplib.h"

namespace haf::service {
namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

class HttpError : public Error {
 public:
  HttpError(int status, std::string code, const std::string& message)
      : Error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

void Send(httplib::Response& res, int status, const OJson& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, const std::string& code,
               const std::string& message) {
  OJson body;
  body["error"] = {{"status", status}, {"code", code}, {"message", message}};
  Send(res, status, body);
}

void SendCorpusError(httplib::Response& res, const corpus::CorpusError& e) {
  OJson body;
  body["error"] = {{"status", 400}, {"code", "invalid_request"}, {"message", e.what()}};
  body["error"]["issues"] = OJson::array();
  for (const auto& issue : e.issues()) body["error"]["issues"].push_back(issue.to_json());
  Send(res, 400, body);
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

// Maps library exceptions onto status codes.
Handler Guard(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const HttpError& e) {
      SendError(res, e.status(), e.code(), e.what());
    } catch (const Json::exception& e) {
      SendError(res, 400, "bad_json", e.what());
    } catch (const NotFoundError& e) {
      SendError(res, 404, "not_found", e.what());
    } catch (const ConflictError& e) {
      SendError(res, 409, "conflict", e.what());
    } catch (const HierarchyError& e) {
      SendError(res, 400, "hierarchy_violation", e.what());
    } catch (const LabelError& e) {
      SendError(res, 400, "invalid_label", e.what());
    } catch (const corpus::CorpusError& e) {
      SendCorpusError(res, e);
    } catch (const ValidationError& e) {
      SendError(res, 400, "invalid_request", e.what());
    } catch (const std::exception& e) {
      SendError(res, 500, "internal", e.what());
    }
  };
}

Json Body(const httplib::Request& req) {
  Json body = Json::parse(req.body);
  if (!body.is_object()) throw HttpError(400, "invalid_request", "request body must be a JSON object");
  return body;
}

std::string StringField(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw HttpError(400, "invalid_request", std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::string Param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) {
    throw HttpError(400, "invalid_request", std::string("missing query parameter '") + key + "'");
  }
  return req.get_param_value(key);
}

int ParseRound(const std::string& text) {
  try {
    std::size_t used = 0;
    int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw HttpError(400, "invalid_request", "round must be a positive integer");
}

metrics::Scope ScopeParam(const std::string& text) {
  auto scope = metrics::ParseScope(text);
  if (!scope) throw HttpError(400, "invalid_request", "scope must be general, specific or all");
  return *scope;
}

corpus::Corpus LabelRows(const Json& rows, const char* what) {
  if (!rows.is_array()) throw HttpError(400, "invalid_request", std::string("'") + what + "' must be an array");
  std::vector<corpus::Entry> entries;
  for (const auto& row : rows) {
    if (!row.is_object() || !row.contains("labels")) {
      throw HttpError(400, "invalid_request",
                      std::string("each '") + what + "' row needs 'id' and 'labels'");
    }
    corpus::Entry e;
    e.review.id = StringField(row, "id");
    e.gold = LabelVector::FromJson(row["labels"]);
    entries.push_back(std::move(e));
  }
  return corpus::Corpus(std::move(entries));
}

bool TokenMatches(const std::string& header, const std::string& token) {
  const std::string expected = "Bearer " + token;
  if (header.size() != expected.size()) return false;
  unsigned char diff = 0;
  for (std::size_t i = 0; i < header.size(); ++i) diff |= header[i] ^ expected[i];
  return diff == 0;
}

}  // namespace

std::optional<std::string> TokenFromEnv(const char* var) {
  const char* value = std::getenv(var);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

HttpService::HttpService(ServiceOptions options)
    : options_(std::move(options)), store_(options_.store_dir) {
  if (!options_.rules) throw ValidationError("the service needs a rule configuration");
}

HttpService::~HttpService() = default;

void HttpService::Register(httplib::Server& server) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Authorization, Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    if (req.method == "OPTIONS") {
      res.status = 204;
      return httplib::Server::HandlerResponse::Handled;
    }
    if (options_.token && !TokenMatches(req.get_header_value("Authorization"), *options_.token)) {
      SendError(res, 401, "unauthorized", "missing or invalid bearer token");
      return httplib::Server::HandlerResponse::Handled;
    }
    return httplib::Server::HandlerResponse::Unhandled;
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      SendError(res, res.status, res.status == 404 ? "not_found" : "error",
                httplib::status_message(res.status));
    }
  });

  server.Get("/taxonomy", Guard([](const httplib::Request&, httplib::Response& res) {
               Send(res, 200, Taxonomy::to_json());
             }));

  server.Post("/tag", Guard([this](const httplib::Request& req, httplib::Response& res) {
                Json body = Body(req);
                Review review{body.contains("id") ? StringField(body, "id") : "request",
                              StringField(body, "text"), std::nullopt};
                review.Validate();
                auto result = rules::TagReview(review, *options_.rules);
                if (req.has_param("detail") && req.get_param_value("detail") != "0") {
                  OJson out;
                  out["labels"] = result.labels.to_json();
                  out["matches"] = OJson::array();
                  for (const auto& m : result.matches) out["matches"].push_back(m.to_json());
                  Send(res, 200, out);
                } else {
                  Send(res, 200, result.labels.to_json());
                }
              }));

  server.Post("/evaluate", Guard([](const httplib::Request& req, httplib::Response& res) {
                Json body = Body(req);
                auto scope = ScopeParam(body.value("scope", std::string("general")));
                auto gold = LabelRows(body.value("gold", Json()), "gold");
                auto pred = LabelRows(body.value("pred", Json()), "pred");
                gold.Validate();
                auto aligned = corpus::AlignLabels(gold, pred);
                Send(res, 200, metrics::ToJson(metrics::Evaluate(aligned.gold, aligned.pred, scope)));
              }));

  server.Get("/campaigns", Guard([this](const httplib::Request&, httplib::Response& res) {
               OJson out;
               out["campaigns"] = OJson::array();
               for (const auto& c : store_.List()) out["campaigns"].push_back(c.to_json(false));
               Send(res, 200, out);
             }));

  server.Post("/campaigns", Guard([this](const httplib::Request& req, httplib::Response& res) {
                Json body = Body(req);
                const std::string id = StringField(body, "id");
                const std::string name = body.contains("name") ? StringField(body, "name") : id;
                Send(res, 201, store_.Create(id, name).to_json(true));
              }));

  server.Get(R"(/campaigns/([^/]+))",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               Send(res, 200, store_.Get(req.matches[1]).to_json(true));
             }));

  server.Get(R"(/campaigns/([^/]+)/rounds)",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               auto c = store_.Get(req.matches[1]);
               OJson out;
               out["campaign"] = c.id;
               out["rounds"] = OJson::array();
               for (const auto& r : c.rounds) out["rounds"].push_back(r.to_json(false));
               Send(res, 200, out);
             }));

  server.Post(R"(/campaigns/([^/]+)/rounds)",
              Guard([this](const httplib::Request& req, httplib::Response& res) {
                const std::string campaign = req.matches[1];
                store_.Get(campaign);  // 404 before body errors
                Json body = Body(req);
                std::vector<Review> reviews;
                if (body.contains("reviews")) {
                  if (!body["reviews"].is_array()) {
                    throw HttpError(400, "invalid_request", "'reviews' must be an array");
                  }
                  for (const auto& r : body["reviews"]) {
                    if (!r.is_object()) throw HttpError(400, "invalid_request", "review must be an object");
                    reviews.push_back(Review{StringField(r, "id"), StringField(r, "text"), std::nullopt});
                  }
                } else if (body.contains("review_ids") || body.contains("sample")) {
                  if (!options_.corpus) {
                    throw HttpError(400, "invalid_request",
                                    "the service has no corpus; send 'reviews' with text");
                  }
                  const auto& pool = *options_.corpus;
                  if (body.contains("review_ids")) {
                    for (const auto& id : body["review_ids"]) {
                      const corpus::Entry* e = pool.find(id.get<std::string>());
                      if (e == nullptr) {
                        throw HttpError(400, "invalid_request",
                                        "review '" + id.get<std::string>() + "' is not in the corpus");
                      }
                      reviews.push_back(e->review);
                    }
                  } else {
                    const auto k = body["sample"].get<std::size_t>();
                    const auto seed = body.value("seed", std::uint64_t{0});
                    if (k == 0 || k > pool.size()) {
                      throw HttpError(400, "invalid_request",
                                      "sample must lie in [1, " + std::to_string(pool.size()) + "]");
                    }
                    auto perm = corpus::SeededPermutation(pool.size(), seed);
                    perm.resize(k);
                    std::sort(perm.begin(), perm.end());
                    for (std::size_t i : perm) reviews.push_back(pool[i].review);
                  }
                } else {
                  throw HttpError(400, "invalid_request",
                                  "send one of 'reviews', 'review_ids' or 'sample'");
                }
                Send(res, 201, store_.OpenRound(campaign, std::move(reviews)).to_json(true));
              }));

  server.Get(R"(/campaigns/([^/]+)/rounds/(\d+))",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               Send(res, 200, store_.GetRound(req.matches[1], ParseRound(req.matches[2])).to_json(true));
             }));

  server.Post(R"(/campaigns/([^/]+)/rounds/(\d+)/close)",
              Guard([this](const httplib::Request& req, httplib::Response& res) {
                const std::string campaign = req.matches[1];
                const int round = ParseRound(req.matches[2]);
                store_.CloseRound(campaign, round);
                Send(res, 200, store_.GetRound(campaign, round).to_json(false));
              }));

  server.Get("/reviews/next-unlabeled",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               std::optional<int> round;
               if (req.has_param("round")) round = ParseRound(req.get_param_value("round"));
               Send(res, 200,
                    store_.NextUnlabeled(Param(req, "campaign"), Param(req, "annotator"), round).to_json());
             }));

  server.Post("/annotations", Guard([this](const httplib::Request& req, httplib::Response& res) {
                Json body = Body(req);
                const std::string campaign = StringField(body, "campaign");
                auto annotation = HumanAnnotation::FromJson(body);
                Send(res, 201, store_.Annotate(campaign, std::move(annotation)).to_json());
              }));

  server.Get("/agreement", Guard([this](const httplib::Request& req, httplib::Response& res) {
               const std::string campaign = Param(req, "campaign");
               int round = 0;
               if (req.has_param("round")) {
                 round = ParseRound(req.get_param_value("round"));
               } else {
                 auto c = store_.Get(campaign);
                 if (c.rounds.empty()) throw NotFoundError("campaign '" + campaign + "' has no rounds");
                 round = c.rounds.back().round;
               }
               auto scope = ScopeParam(req.has_param("scope") ? req.get_param_value("scope") : "all");
               Send(res, 200, store_.Agreement(campaign, round, scope).to_json());
             }));
}

}  // namespace haf::service
