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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "haf/corpus/corpus.h"
#include "haf/metrics/fleiss.h"
#include "haf/metrics/report.h"
#include "haf/rules/tagger.h"
#include "haf/service/calibration_store.h"
#include "haf/service/http_service.h"
#include "httplib.h"
#include "oracle.h"

using haf::LabelVector;
using haf::Review;
using namespace haf::service;
using Json = nlohmann::json;

namespace {

std::filesystem::path TempDir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() /
           (name + "-" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(p);
  return p;
}

std::vector<Review> FiveReviews() {
  return {{"a", "mura ang item", std::nullopt},
          {"b", "bilis dumating", std::nullopt},
          {"c", "bilis ng epekto", std::nullopt},
          {"d", "Okay naman.", std::nullopt},
          {"e", "Legit seller, sulit", std::nullopt}};
}

HumanAnnotation Ann(int round, std::string annotator, std::string review,
                    std::initializer_list<std::string_view> slugs) {
  return {round, std::move(annotator), std::move(review), LabelVector::FromSlugs(slugs), std::nullopt};
}

std::string Dump(const CalibrationStore& store) {
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& c : store.List()) {
    auto j = c.to_json(true);
    j["round_detail"] = nlohmann::ordered_json::array();
    for (const auto& r : c.rounds) j["round_detail"].push_back(r.to_json(true));
    all.push_back(j);
  }
  return all.dump();
}

std::shared_ptr<const haf::rules::RuleConfig> Rules() {
  static auto config = std::make_shared<const haf::rules::RuleConfig>(
      haf::rules::RuleConfig::Load(HAF_DATA_DIR "/rules/taglish_rules.json"));
  return config;
}

// A service on 127.0.0.1 with a client pointed at it.
struct TestServer {
  HttpService service;
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::unique_ptr<httplib::Client> client;

  explicit TestServer(ServiceOptions options) : service(std::move(options)) {
    service.Register(server);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    if (service.options().token) client->set_bearer_token_auth(*service.options().token);
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }

  httplib::Result Post(const std::string& path, const Json& body) {
    return client->Post(path, body.dump(), "application/json");
  }
  httplib::Result Get(const std::string& path) { return client->Get(path); }
};

ServiceOptions Options(const std::filesystem::path& dir) {
  ServiceOptions o;
  o.store_dir = dir;
  o.rules = Rules();
  return o;
}

}  // namespace

TEST_CASE("store lifecycle and error mapping") {
  const auto dir = TempDir("haf-store");
  CalibrationStore store(dir);
  CHECK(store.List().empty());
  store.Create("cal", "Calibration");
  CHECK_THROWS_AS(store.Create("cal", "again"), ConflictError);
  CHECK_THROWS_AS(store.Create("bad id", "x"), haf::ValidationError);
  CHECK_THROWS_AS(store.Create("../escape", "x"), haf::ValidationError);
  CHECK_THROWS_AS(store.OpenRound("nope", FiveReviews()), NotFoundError);
  CHECK_THROWS_AS(store.OpenRound("cal", {}), haf::ValidationError);
  CHECK_THROWS_AS(store.OpenRound("cal", {{"a", "x", {}}, {"a", "y", {}}}), haf::ValidationError);

  auto round = store.OpenRound("cal", FiveReviews());
  CHECK(round.round == 1);
  CHECK(store.Get("cal").open_round() == 1);

  store.Annotate("cal", Ann(1, "ana", "a", {"PRICE", "PRICE.Affordability"}));
  CHECK_THROWS_AS(store.Annotate("cal", Ann(1, "ana", "a", {"PRICE"})), ConflictError);
  CHECK_THROWS_AS(store.Annotate("cal", Ann(1, "ben", "a", {"PRICE.Affordability"})), haf::HierarchyError);
  CHECK_THROWS_AS(store.Annotate("cal", Ann(2, "ben", "a", {})), NotFoundError);
  CHECK_THROWS_AS(store.Annotate("cal", Ann(1, "ben", "zzz", {})), NotFoundError);
  CHECK_THROWS_AS(store.Annotate("cal", Ann(1, "", "a", {})), haf::ValidationError);

  auto with_span = Ann(1, "ben", "a", {"PRICE", "PRICE.Affordability"});
  with_span.spans = std::vector<haf::AspectSpan>{haf::AspectSpan::Make(haf::General::kPrice, "mura ang item", 0, 4)};
  store.Annotate("cal", with_span);
  auto bad_span = Ann(1, "cy", "a", {"PRICE"});
  bad_span.spans = std::vector<haf::AspectSpan>{{haf::General::kPrice, 0, 4, "item"}};
  CHECK_THROWS_AS(store.Annotate("cal", bad_span), haf::ValidationError);
  auto off_label = Ann(1, "cy", "a", {"PRODUCT"});
  off_label.spans = std::vector<haf::AspectSpan>{haf::AspectSpan::Make(haf::General::kPrice, "mura ang item", 0, 4)};
  CHECK_THROWS_AS(store.Annotate("cal", off_label), haf::ValidationError);

  auto next = store.NextUnlabeled("cal", "ana");
  REQUIRE(next.review.has_value());
  CHECK(next.review->id == "b");
  CHECK(next.remaining == 4);
  CHECK(store.NextUnlabeled("cal", "newcomer").remaining == 5);

  // Opening the next round closes this one.
  store.OpenRound("cal", {{"z", "kulang yung order", {}}});
  CHECK(store.GetRound("cal", 1).closed);
  CHECK_THROWS_AS(store.Annotate("cal", Ann(1, "cy", "b", {})), ConflictError);
  store.CloseRound("cal", 2);
  CHECK_THROWS_AS(store.CloseRound("cal", 2), ConflictError);
  CHECK_THROWS_AS(store.NextUnlabeled("cal", "ana"), NotFoundError);
  CHECK(store.NextUnlabeled("cal", "ana", 1).remaining == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("store survives restarts and torn appends") {
  const auto dir = TempDir("haf-restart");
  std::string before;
  {
    CalibrationStore store(dir);
    store.Create("c1", "one");
    store.Create("c2", "two");
    store.OpenRound("c1", FiveReviews());
    store.Annotate("c1", Ann(1, "ana", "a", {"PRICE"}));
    store.Annotate("c1", Ann(1, "ben", "a", {"PRICE", "PRICE.General"}));
    store.OpenRound("c1", {{"q", "sulit", {}}});
    store.Annotate("c1", Ann(2, "ana", "q", {}));
    store.OpenRound("c2", FiveReviews());
    store.CloseRound("c2", 1);
    before = Dump(store);
  }
  {
    CalibrationStore again(dir);
    CHECK(Dump(again) == before);
    CHECK_THROWS_AS(again.Annotate("c1", Ann(1, "ana", "b", {})), ConflictError);  // round 1 closed
    CHECK_THROWS_AS(again.Annotate("c1", Ann(2, "ana", "q", {})), ConflictError);  // duplicate
  }
  // A crash mid-append leaves a partial final line; it is ignored.
  {
    std::ofstream out(dir / "c1.jsonl", std::ios::app | std::ios::binary);
    out << R"({"type":"annotation","round":2,"annot)";
  }
  CalibrationStore torn(dir);
  CHECK(Dump(torn) == before);

  // Files that are not calibration logs are left alone.
  std::ofstream(dir / "notes.jsonl") << "{\"schema\":\"something.else\"}\n";
  CHECK(CalibrationStore(dir).List().size() == 2);

  // A corrupt middle line is an error that names the file and line.
  std::ofstream(dir / "broken.jsonl") << "{\"schema\":\"haf.calibration_campaign\",\"version\":1,\"id\":\"b\"}\n"
                                      << "{\"type\":\"annotation\",\"round\":1}\n";
  try {
    CalibrationStore bad(dir);
    FAIL("expected ValidationError");
  } catch (const haf::ValidationError& e) {
    CHECK(std::string(e.what()).find("broken.jsonl") != std::string::npos);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("agreement comes from the metrics module") {
  const auto dir = TempDir("haf-agree");
  CalibrationStore store(dir);
  store.Create("k", "kappa");
  store.OpenRound("k", FiveReviews());

  auto none = store.Agreement("k", 1);
  CHECK_FALSE(none.available);
  CHECK(none.to_json()["mean_kappa"].is_null());

  const std::vector<std::vector<std::string_view>> shared = {
      {"PRICE", "PRICE.Affordability"}, {"DELIVERY", "DELIVERY.Timeliness"},
      {"PRODUCT", "PRODUCT.Effectiveness"}, {}, {"SERVICE", "SERVICE.Trustworthiness", "PRICE", "PRICE.Value_for_Money"}};
  const auto reviews = FiveReviews();
  for (const char* who : {"ana", "ben"}) {
    for (std::size_t i = 0; i < reviews.size(); ++i) {
      store.Annotate("k", {1, who, reviews[i].id, LabelVector::FromSlugs(std::vector<std::string>(shared[i].begin(), shared[i].end())), std::nullopt});
    }
  }
  auto perfect = store.Agreement("k", 1);
  REQUIRE(perfect.available);
  CHECK(perfect.agreement.per_label.size() == 25);
  for (const auto& k : perfect.agreement.per_label) CHECK(k.kappa == 1.0);
  CHECK(perfect.agreement.mean == 1.0);
  CHECK(perfect.disagreements.empty());
  CHECK(perfect.annotators == std::vector<std::string>{"ana", "ben"});
  CHECK(store.Agreement("k", 1, haf::metrics::Scope::kGeneral).agreement.per_label.size() == 4);

  // A third annotator on two items: only those carry the top rater count.
  store.Annotate("k", Ann(1, "cy", "a", {"PRICE", "PRICE.General"}));
  store.Annotate("k", Ann(1, "cy", "b", {"DELIVERY", "DELIVERY.Timeliness"}));
  auto partial = store.Agreement("k", 1);
  CHECK(partial.items == std::vector<std::string>{"a", "b"});
  CHECK(partial.excluded == std::vector<std::string>{"c", "d", "e"});
  REQUIRE(partial.disagreements.size() == 1);
  CHECK(partial.disagreements[0].review_id == "a");
  CHECK(partial.disagreements[0].labels ==
        std::vector<haf::LabelIndex>{*haf::Taxonomy::find("PRICE.Affordability"),
                                     *haf::Taxonomy::find("PRICE.General")});
  CHECK_THROWS_AS(store.Agreement("k", 9), NotFoundError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("agreement matches the textbook oracle on random rounds") {
  std::mt19937_64 rng(404);
  const auto dir = TempDir("haf-agree-rand");
  CalibrationStore store(dir);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string id = "t" + std::to_string(trial);
    store.Create(id, id);
    const int items = 2 + static_cast<int>(rng() % 6);
    const int raters = 2 + static_cast<int>(rng() % 3);
    std::vector<Review> reviews;
    for (int i = 0; i < items; ++i) reviews.push_back({"r" + std::to_string(i), "text", std::nullopt});
    store.OpenRound(id, reviews);
    std::vector<std::vector<LabelVector>> stored(items);
    for (int i = 0; i < items; ++i) {
      for (int a = 0; a < raters; ++a) {
        LabelVector v;
        for (int g = 0; g < haf::kNumGenerals; ++g) {
          if (rng() % 2) continue;
          v.set(g);
          auto [b, e] = haf::Taxonomy::children_of(static_cast<haf::General>(g));
          for (int s = b; s < e; ++s) {
            if (rng() % 3 == 0) v.set(haf::SpecificLabel(s));
          }
        }
        stored[i].push_back(v);
        store.Annotate(id, {1, "a" + std::to_string(a), reviews[i].id, v, std::nullopt});
      }
    }
    auto got = store.Agreement(id, 1);
    REQUIRE(got.available);
    REQUIRE(got.agreement.per_label.size() == 25);
    oracle::Q mean(0);
    for (int l = 0; l < haf::kNumLabels; ++l) {
      std::vector<std::vector<int>> counts;
      for (const auto& item : stored) {
        int present = 0;
        for (const auto& v : item) present += v.test(l) ? 1 : 0;
        counts.push_back({raters - present, present});
      }
      const oracle::Q expected = oracle::Fleiss(counts);
      mean = mean + expected;
      CHECK(std::abs(got.agreement.per_label[l].kappa - expected.value()) < 1e-12);
    }
    mean = mean / oracle::Q(haf::kNumLabels);
    CHECK(std::abs(got.agreement.mean - mean.value()) < 1e-12);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent annotation writes are serialized") {
  const auto dir = TempDir("haf-concurrent");
  std::string before;
  {
    CalibrationStore store(dir);
    store.Create("c", "c");
    std::vector<Review> reviews;
    for (int i = 0; i < 30; ++i) reviews.push_back({"r" + std::to_string(i), "mura", std::nullopt});
    store.OpenRound("c", reviews);
    std::vector<std::thread> threads;
    std::atomic<int> conflicts{0};
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&, t] {
        // Annotators 0..3 each run on two threads, so half the writes collide.
        const std::string who = "a" + std::to_string(t % 4);
        for (const auto& r : reviews) {
          try {
            store.Annotate("c", Ann(1, who, r.id, {"PRICE", "PRICE.Affordability"}));
          } catch (const ConflictError&) {
            ++conflicts;
          }
        }
      });
    }
    for (auto& th : threads) th.join();
    CHECK(conflicts == 4 * 30);
    CHECK(store.GetRound("c", 1).annotations.size() == 4 * 30);
    before = Dump(store);
  }
  CHECK(Dump(CalibrationStore(dir)) == before);
  std::filesystem::remove_all(dir);
}

TEST_CASE("http api") {
  const auto dir = TempDir("haf-http");
  TestServer s(Options(dir));

  auto tax = s.Get("/taxonomy");
  REQUIRE(tax);
  CHECK(tax->status == 200);
  CHECK(tax->body == haf::Taxonomy::to_json().dump());
  CHECK(tax->get_header_value("Content-Type") == "application/json");

  auto tag = s.Post("/tag", {{"text", "mura ang item"}});
  REQUIRE(tag);
  CHECK(tag->status == 200);
  auto tagged = Json::parse(tag->body);
  CHECK(tagged["PRICE"] == true);
  CHECK(tagged["PRICE.Affordability"] == true);
  CHECK(tagged["PRODUCT"] == false);
  CHECK(s.Post("/tag", {{"txt", "x"}})->status == 400);
  CHECK(s.client->Post("/tag", "{not json", "application/json")->status == 400);
  auto detail = s.Post("/tag?detail=1", {{"text", "mura ang item"}});
  CHECK(Json::parse(detail->body)["matches"].size() == 1);

  CHECK(s.Post("/campaigns", {{"id", "cal"}, {"name", "Calibration"}})->status == 201);
  CHECK(s.Post("/campaigns", {{"id", "cal"}})->status == 409);
  CHECK(s.Post("/campaigns", {{"id", "no/slash"}})->status == 400);
  CHECK(s.Get("/campaigns/missing")->status == 404);
  CHECK(s.Post("/campaigns/missing/rounds", {{"reviews", Json::array()}})->status == 404);

  Json reviews = Json::array();
  for (const auto& r : FiveReviews()) reviews.push_back({{"id", r.id}, {"text", r.text}});
  auto opened = s.Post("/campaigns/cal/rounds", {{"reviews", reviews}});
  REQUIRE(opened);
  CHECK(opened->status == 201);
  CHECK(Json::parse(opened->body)["round"] == 1);
  CHECK(s.Post("/campaigns/cal/rounds", {{"review_ids", {"a"}}})->status == 400);  // no corpus

  auto next = Json::parse(s.Get("/reviews/next-unlabeled?campaign=cal&annotator=ana")->body);
  CHECK(next["review"]["id"] == "a");
  CHECK(next["remaining"] == 5);
  CHECK(s.Get("/reviews/next-unlabeled?campaign=cal")->status == 400);

  auto body = [](const char* who, const char* review, Json labels) {
    return Json{{"campaign", "cal"}, {"round", 1}, {"annotator", who}, {"review_id", review}, {"labels", labels}};
  };
  CHECK(s.Post("/annotations", body("ana", "a", {{"PRICE", true}, {"PRICE.Affordability", true}}))->status == 201);
  auto dup = s.Post("/annotations", body("ana", "a", {{"PRICE", true}}));
  CHECK(dup->status == 409);
  CHECK(Json::parse(dup->body)["error"]["code"] == "conflict");
  auto slug = s.Post("/annotations", body("ben", "a", {{"PRICE.Cheapness", true}}));
  CHECK(slug->status == 400);
  CHECK(Json::parse(slug->body)["error"]["code"] == "invalid_label");
  auto hier = s.Post("/annotations", body("ben", "a", {{"PRICE.Affordability", true}}));
  CHECK(hier->status == 400);
  CHECK(Json::parse(hier->body)["error"]["code"] == "hierarchy_violation");
  auto wrong_round = body("ben", "a", {{"PRICE", true}});
  wrong_round["round"] = 7;
  CHECK(s.Post("/annotations", wrong_round)->status == 404);
  CHECK(s.Post("/annotations", body("ben", "a", {{"PRICE", true}, {"PRICE.Affordability", true}}))->status == 201);

  auto agreement = s.Get("/agreement?campaign=cal&round=1");
  REQUIRE(agreement);
  CHECK(agreement->status == 200);
  auto kappa = Json::parse(agreement->body);
  CHECK(kappa["available"] == true);
  CHECK(kappa["items"] == Json{"a"});
  CHECK(kappa["excluded_items"] == Json::array());
  CHECK(kappa["per_label"]["PRICE.Affordability"] == 1.0);
  CHECK(kappa["mean_kappa"] == 1.0);
  CHECK(s.Get("/agreement?campaign=cal&round=4")->status == 404);
  CHECK(s.Get("/agreement?campaign=cal&scope=odd")->status == 400);

  auto rounds = Json::parse(s.Get("/campaigns/cal/rounds")->body);
  CHECK(rounds["rounds"].size() == 1);
  CHECK(rounds["rounds"][0]["n_annotations"] == 2);
  CHECK(s.Post("/campaigns/cal/rounds/1/close", Json::object())->status == 200);
  CHECK(s.Post("/campaigns/cal/rounds/1/close", Json::object())->status == 409);

  auto preflight = s.client->Options("/annotations");
  CHECK(preflight->status == 204);
  CHECK(preflight->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(s.Get("/no/such/route")->status == 404);
  std::filesystem::remove_all(dir);
}

TEST_CASE("http tag matches the library byte for byte") {
  const auto dir = TempDir("haf-http-tag");
  TestServer s(Options(dir));
  auto corpus = haf::corpus::LoadCorpus(HAF_DATA_DIR "/corpus/synthetic_60.jsonl").corpus;
  for (const auto& e : corpus.entries()) {
    auto res = s.Post("/tag", {{"text", e.review.text}});
    REQUIRE(res);
    CHECK(res->body == haf::rules::TagReview(e.review, *Rules()).labels.to_json().dump());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("http evaluate matches the library") {
  const auto dir = TempDir("haf-http-eval");
  TestServer s(Options(dir));
  haf::corpus::LoadOptions lo;
  lo.require_text = false;
  auto gold = haf::corpus::LoadCorpus(HAF_DATA_DIR "/fixtures/reported_gold.jsonl", std::nullopt, lo).corpus;
  auto pred = haf::corpus::LoadCorpus(HAF_DATA_DIR "/fixtures/reported_pred_llm.jsonl", std::nullopt, lo).corpus;
  Json g = Json::array(), p = Json::array();
  for (const auto& e : gold.entries()) g.push_back({{"id", e.review.id}, {"labels", e.gold->to_json()}});
  // Prediction order does not matter.
  for (auto it = pred.entries().rbegin(); it != pred.entries().rend(); ++it) {
    p.push_back({{"id", it->review.id}, {"labels", it->gold->to_json()}});
  }
  auto res = s.Post("/evaluate", {{"gold", g}, {"pred", p}, {"scope", "general"}});
  REQUIRE(res);
  CHECK(res->status == 200);
  auto report = haf::metrics::Evaluate(gold.GoldLabels(), pred.GoldLabels(), haf::metrics::Scope::kGeneral);
  CHECK(res->body == haf::metrics::ToJson(report).dump());
  auto j = Json::parse(res->body);
  CHECK(std::abs(j["exact_match"].get<double>() - 18.0 / 23) < 1e-12);
  CHECK(std::abs(j["hamming_loss"].get<double>() - 7.0 / 92) < 1e-12);

  p.erase(p.begin());
  auto missing = s.Post("/evaluate", {{"gold", g}, {"pred", p}});
  CHECK(missing->status == 400);
  CHECK(Json::parse(missing->body)["error"]["issues"].size() == 1);
  CHECK(s.Post("/evaluate", {{"gold", g}, {"pred", p}, {"scope", "odd"}})->status == 400);
  std::filesystem::remove_all(dir);
}

TEST_CASE("http bearer token") {
  const auto dir = TempDir("haf-http-auth");
  auto options = Options(dir);
  options.token = "let-me-in";
  TestServer s(options);
  CHECK(s.Get("/taxonomy")->status == 200);
  httplib::Client anonymous("127.0.0.1", s.port);
  auto denied = anonymous.Get("/taxonomy");
  CHECK(denied->status == 401);
  CHECK(Json::parse(denied->body)["error"]["code"] == "unauthorized");
  anonymous.set_bearer_token_auth("let-me-i");
  CHECK(anonymous.Get("/taxonomy")->status == 401);
  CHECK(anonymous.Options("/taxonomy")->status == 204);

  setenv("HAF_TEST_SERVICE_TOKEN", "", 1);
  CHECK_FALSE(TokenFromEnv("HAF_TEST_SERVICE_TOKEN").has_value());
  setenv("HAF_TEST_SERVICE_TOKEN", "t", 1);
  CHECK(TokenFromEnv("HAF_TEST_SERVICE_TOKEN") == "t");
  std::filesystem::remove_all(dir);
}

TEST_CASE("calibration demo over http survives a restart") {
  const auto dir = TempDir("haf-http-demo");
  auto options = Options(dir);
  options.corpus = std::make_shared<haf::corpus::Corpus>(
      haf::corpus::LoadCorpus(HAF_DATA_DIR "/corpus/synthetic_60.jsonl").corpus);
  std::string round_after;
  Json agreement_after;
  {
    TestServer s(options);
    REQUIRE(s.Post("/campaigns", {{"id", "demo"}})->status == 201);
    auto opened = Json::parse(s.Post("/campaigns/demo/rounds", {{"sample", 5}, {"seed", 11}})->body);
    REQUIRE(opened["reviews"].size() == 5);
    CHECK(s.Post("/campaigns/demo/rounds", {{"sample", 61}})->status == 400);
    CHECK(s.Post("/campaigns/demo/rounds", {{"review_ids", {"nope"}}})->status == 400);

    // Two annotators work through the round; the second differs on one review.
    std::vector<std::vector<LabelVector>> matrix;
    for (const char* who : {"ana", "ben"}) {
      for (;;) {
        auto next = Json::parse(s.Get(std::string("/reviews/next-unlabeled?campaign=demo&annotator=") + who)->body);
        if (next["done"] == true) break;
        const std::string id = next["review"]["id"];
        LabelVector labels = options.corpus->find(id)->gold.value();
        if (std::string(who) == "ben" && next["remaining"] == 1) labels = LabelVector();
        auto res = s.Post("/annotations", {{"campaign", "demo"}, {"round", 1}, {"annotator", who},
                                           {"review_id", id}, {"labels", labels.to_json()}});
        REQUIRE(res->status == 201);
      }
    }
    auto snapshot = s.service.store().GetRound("demo", 1);
    std::map<std::string, std::vector<LabelVector>> by_review;
    for (const auto& a : snapshot.annotations) by_review[a.review_id].push_back(a.labels);
    for (const auto& r : snapshot.reviews) matrix.push_back(by_review[r.id]);
    const auto labels = haf::metrics::LabelsIn(haf::metrics::Scope::kAll);
    auto expected = haf::metrics::MultiLabelFleiss(matrix, labels);

    agreement_after = Json::parse(s.Get("/agreement?campaign=demo")->body);
    CHECK(agreement_after["available"] == true);
    CHECK(agreement_after["n_items"] == 5);
    CHECK(agreement_after["mean_kappa"].get<double>() == expected.mean);
    for (const auto& k : expected.per_label) {
      CHECK(agreement_after["per_label"][std::string(haf::Taxonomy::slug(k.label))].get<double>() == k.kappa);
    }
    CHECK(agreement_after["disagreements"].size() == 1);
    CHECK(agreement_after["mean_kappa"].get<double>() < 1.0);
    round_after = s.Get("/campaigns/demo/rounds/1")->body;
  }
  TestServer restarted(options);
  CHECK(restarted.Get("/campaigns/demo/rounds/1")->body == round_after);
  CHECK(Json::parse(restarted.Get("/agreement?campaign=demo&round=1")->body) == agreement_after);
  auto listed = Json::parse(restarted.Get("/campaigns")->body);
  CHECK(listed["campaigns"].size() == 1);
  CHECK(listed["campaigns"][0]["open_round"] == 1);
  std::filesystem::remove_all(dir);
}
