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


#ifndef HAF_SERVICE_HTTP_SERVICE_H_
#define HAF_SERVICE_HTTP_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "haf/corpus/corpus.h"
#include "haf/rules/rule_config.h"
#include "haf/service/calibration_store.h"

namespace httplib {
class Server;
}

namespace haf::service {

inline constexpr const char* kTokenEnv = "HAF_SERVICE_TOKEN";

struct ServiceOptions {
  std::filesystem::path store_dir;
  // Backs POST /tag. Required.
  std::shared_ptr<const rules::RuleConfig> rules;
  // Review pool for rounds opened by id or by sample. Optional.
  std::shared_ptr<const corpus::Corpus> corpus;
  // When set, every request except CORS preflight needs
  // "Authorization: Bearer <token>".
  std::optional<std::string> token;
};

// Value of the token variable, or nullopt when unset or empty.
std::optional<std::string> TokenFromEnv(const char* var = kTokenEnv);

// JSON API over the rule engine, the metrics and a calibration store.
//
//   GET  /taxonomy
//   POST /tag                           {"text"} -> label object
//   POST /evaluate                      {"gold", "pred", "scope"} -> report
//   GET  /campaigns
//   POST /campaigns                     {"id", "name"}
//   GET  /campaigns/{id}
//   GET  /campaigns/{id}/rounds
//   POST /campaigns/{id}/rounds         {"reviews"} | {"review_ids"} | {"sample", "seed"}
//   GET  /campaigns/{id}/rounds/{n}
//   POST /campaigns/{id}/rounds/{n}/close
//   GET  /reviews/next-unlabeled        ?campaign&annotator[&round]
//   POST /annotations                   {"campaign", "round", "annotator", "review_id", "labels", "spans"}
//   GET  /agreement                     ?campaign[&round][&scope]
//
// Errors are {"error": {"status", "code", "message"}} with 400 for bad input,
// 401 for a missing token, 404 for unknown resources and 409 for conflicts.
class HttpService {
 public:
  explicit HttpService(ServiceOptions options);
  ~HttpService();

  // Installs the routes. The service must outlive the server.
  void Register(httplib::Server& server);

  CalibrationStore& store() { return store_; }
  const ServiceOptions& options() const { return options_; }

 private:
  ServiceOptions options_;
  CalibrationStore store_;
};

}  // namespace haf::service

#endif  // HAF_SERVICE_HTTP_SERVICE_H_
