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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "haf/llm/annotator.h"
#include "haf/llm/campaign.h"
#include "haf/llm/chat.h"
#include "haf/llm/mock.h"
#include "haf/llm/parse.h"
#include "haf/llm/prompt.h"
#include "haf/rules/rule_config.h"
#include "httplib.h"

using haf::General;
using haf::LabelVector;
using haf::Review;
using namespace haf::llm;

namespace {

Review R(std::string id, std::string text) { return Review{std::move(id), std::move(text), std::nullopt}; }

const haf::rules::RuleConfig& Rules() {
  static const auto config = haf::rules::RuleConfig::Load(HAF_DATA_DIR "/rules/taglish_rules.json");
  return config;
}

ProviderConfig Offline(int attempts = 3, int parallelism = 1) {
  ProviderConfig c;
  c.model = "mock";
  c.max_attempts = attempts;
  c.parallelism = parallelism;
  return c;
}

FewShotExample Example(std::string text, std::initializer_list<std::string_view> slugs) {
  return {std::move(text), LabelVector::FromSlugs(slugs), std::nullopt};
}

std::vector<std::string> MalformedOutputs() {
  std::ifstream in(HAF_DATA_DIR "/llm/malformed_outputs.json");
  return nlohmann::json::parse(in)["outputs"].get<std::vector<std::string>>();
}

std::filesystem::path TempPath(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() /
           (name + "-" + std::to_string(std::random_device{}()));
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("identification prompt layout") {
  auto t = PromptTemplate::Default();
  auto req = BuildIdentificationRequest(R("r", "mura ang item"), t, Offline());
  REQUIRE(req.messages.size() == 2);
  CHECK(req.messages[0].role == "system");
  CHECK(req.messages[1].content == "Review: mura ang item");
  for (int i = 0; i < haf::kNumLabels; ++i) {
    CHECK(req.messages[0].content.find(haf::Taxonomy::slug(i)) != std::string::npos);
  }
  CHECK(req.temperature == 0.0);

  PromptTemplate three("three", "Label reviews.", t.output_instruction(), t.span_instruction(),
                       {Example("first", {"PRICE"}), Example("second", {}),
                        Example("third", {"SERVICE", "SERVICE.Handling"})});
  auto req3 = BuildIdentificationRequest(R("r", "target"), three, Offline());
  REQUIRE(req3.messages.size() == 8);
  CHECK(req3.messages[1].content == "Review: first");
  CHECK(req3.messages[3].content == "Review: second");
  CHECK(req3.messages[5].content == "Review: third");
  CHECK(req3.messages[6].content == LabelVector::FromSlugs({"SERVICE", "SERVICE.Handling"}).to_json().dump());
  CHECK(req3.messages[7].content == "Review: target");
}

TEST_CASE("prompt serialization is byte stable") {
  auto a = PromptTemplate::Load(HAF_DATA_DIR "/prompts/identification.json");
  auto b = PromptTemplate::Load(HAF_DATA_DIR "/prompts/identification.json");
  CHECK(a.version() == b.version());
  const Review r = R("r", "Sulit, ang bilis dumating!");
  const std::string first = BuildIdentificationRequest(r, a, Offline()).to_json().dump();
  for (int i = 0; i < 50; ++i) {
    CHECK(BuildIdentificationRequest(r, b, Offline()).to_json().dump() == first);
  }
  CHECK(a.examples().size() == 3);
  CHECK(BuildExtractionRequest(r, a, Offline()).to_json().dump() ==
        BuildExtractionRequest(r, b, Offline()).to_json().dump());
}

TEST_CASE("prompt version tracks every field") {
  auto base = PromptTemplate::Default();
  std::set<std::string> versions = {base.version()};
  versions.insert(PromptTemplate("other", base.preamble(), base.output_instruction(),
                                 base.span_instruction(), {}).version());
  versions.insert(PromptTemplate(base.name(), base.preamble() + ".", base.output_instruction(),
                                 base.span_instruction(), {}).version());
  versions.insert(PromptTemplate(base.name(), base.preamble(), base.output_instruction() + ".",
                                 base.span_instruction(), {}).version());
  versions.insert(PromptTemplate(base.name(), base.preamble(), base.output_instruction(),
                                 base.span_instruction() + ".", {}).version());
  versions.insert(PromptTemplate(base.name(), base.preamble(), base.output_instruction(),
                                 base.span_instruction(), {Example("x", {})}).version());
  versions.insert(PromptTemplate(base.name(), base.preamble(), base.output_instruction(),
                                 base.span_instruction(), {Example("x", {"PRICE"})}).version());
  CHECK(versions.size() == 7);

  CHECK_THROWS_AS(PromptTemplate("bad", "p", "o", "s", {Example("x", {"PRICE.Affordability"})}),
                  haf::HierarchyError);
  CHECK_THROWS_AS(PromptTemplate("bad", "", "o", "s", {}), haf::ValidationError);
}

TEST_CASE("parse boolean output") {
  auto canonical = LabelVector::FromSlugs({"PRICE", "PRICE.Affordability"});
  auto p = ParseBooleanOutput(canonical.to_json().dump());
  REQUIRE(p.ok());
  CHECK(*p.labels == canonical);
  CHECK(p.repairs == 0);

  auto fenced = ParseBooleanOutput("Sure! Here is the answer: ```json\n" +
                                   canonical.to_json().dump(2) + "\n``` Hope it helps {:");
  REQUIRE(fenced.ok());
  CHECK(*fenced.labels == canonical);

  auto prose = ParseBooleanOutput("The labels are {\"price\": true, \"PRICE.Affordability\": true}.");
  REQUIRE(prose.ok());
  CHECK(*prose.labels == canonical);

  auto bad = ParseBooleanOutput("{\"PRICE\": \"yes\"}");
  CHECK_FALSE(bad.ok());
  CHECK(bad.failure.find("non-boolean value") != std::string::npos);
  CHECK(ParseBooleanOutput("{\"COLOR\": true}").failure == "unknown label 'COLOR'");
  CHECK(ParseBooleanOutput("no json here").failure == "no JSON object found");

  auto repaired = ParseBooleanOutput("{\"DELIVERY.Timeliness\": true, \"PRICE\": true}");
  REQUIRE(repaired.ok());
  CHECK(repaired.repairs == 1);
  CHECK(*repaired.labels == LabelVector::FromSlugs({"PRICE"}));

  for (const auto& raw : MalformedOutputs()) {
    INFO(raw);
    CHECK_FALSE(ParseBooleanOutput(raw).ok());
  }
}

TEST_CASE("parser is total") {
  std::mt19937_64 rng(77);
  const std::string alphabet = "{}[]\":,`truefalsPRICE. \n\\x";
  const std::string valid = LabelVector::FromSlugs({"SERVICE"}).to_json().dump();
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    if (i % 2) {
      s = valid;
      for (int k = rng() % 6; k >= 0; --k) {
        s[rng() % s.size()] = alphabet[rng() % alphabet.size()];
      }
    } else {
      for (int k = rng() % 60; k > 0; --k) s += alphabet[rng() % alphabet.size()];
    }
    CHECK_NOTHROW(ParseBooleanOutput(s));
    CHECK_NOTHROW(ParseSpanOutput(s));
    auto p = ParseBooleanOutput(s);
    if (p.ok()) CHECK(p.labels->is_consistent());
  }
}

TEST_CASE("span alignment") {
  const Review r = R("r", "mura ang item");
  auto exact = LocateSpans(r, {{General::kPrice, "mura"}});
  REQUIRE(exact.spans.size() == 1);
  CHECK(exact.spans[0] == haf::AspectSpan{General::kPrice, 0, 4, "mura"});

  auto missing = LocateSpans(r, {{General::kPrice, "sobrang mahal"}});
  CHECK(missing.spans.empty());
  REQUIRE(missing.dropped.size() == 1);

  const Review over = R("o", "sobrang mura talaga");
  auto kept = LocateSpans(over, {{General::kPrice, "sobrang mura"}});
  REQUIRE(kept.spans.size() == 1);
  CHECK(kept.spans[0].surface == "sobrang mura");

  // Normalized fallback maps back to the original characters.
  const Review loud = R("l", "Muraaaa ang ＩＴＥＭ");
  auto norm = LocateSpans(loud, {{General::kPrice, "mura"}, {General::kProduct, "item"}});
  REQUIRE(norm.spans.size() == 2);
  CHECK(norm.spans[0].surface == "Muraaaa");
  CHECK(norm.spans[1].surface == "ＩＴＥＭ");

  // Repeats take successive occurrences.
  const Review twice = R("t", "mura, mura talaga");
  auto rep = LocateSpans(twice, {{General::kPrice, "mura"}, {General::kPrice, "mura"}});
  REQUIRE(rep.spans.size() == 2);
  CHECK(rep.spans[0].start == 0);
  CHECK(rep.spans[1].start == 6);

  auto parsed = ParseSpanOutput("```json\n{\"spans\": [{\"category\": \"price\", \"text\": \"mura\"}]}\n```");
  REQUIRE(parsed.ok());
  CHECK(parsed.spans->at(0) == SpanAnswer{General::kPrice, "mura"});
  CHECK(ParseSpanOutput("[{\"category\": \"PRICE\", \"text\": \"mura\"}]").ok());
  CHECK_FALSE(ParseSpanOutput("{\"spans\": [{\"category\": \"COLOR\", \"text\": \"x\"}]}").ok());
}

TEST_CASE("span soundness on random answers") {
  std::mt19937_64 rng(9);
  const std::string text = "Ang GANDAAA ng kulay, piña cloth pa! Mura at sulit 😀 talaga";
  const auto cps = haf::utf8::Decode(text);
  const Review r = R("r", text);
  for (int i = 0; i < 500; ++i) {
    std::vector<SpanAnswer> answers;
    for (int k = 0; k < 4; ++k) {
      std::size_t b = rng() % cps.size();
      std::size_t e = b + rng() % (cps.size() - b + 1);
      std::string piece = haf::utf8::Encode(cps.substr(b, e - b));
      if (rng() % 3 == 0) {
        for (char& c : piece) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      if (rng() % 5 == 0) piece += "zzz";
      answers.push_back({static_cast<General>(rng() % 4), piece});
    }
    auto located = LocateSpans(r, answers);
    CHECK(located.spans.size() + located.dropped.size() == answers.size());
    for (const auto& s : located.spans) CHECK(s.IsValidFor(text));
  }
}

TEST_CASE("annotate with retries") {
  auto t = PromptTemplate::Default();
  const Review r = R("r1", "mura ang item");
  const std::string good = LabelVector::FromSlugs({"PRICE", "PRICE.Affordability"}).to_json().dump();

  MockChatClient ok([&](const ChatRequest&) { return good; });
  auto a = AnnotateReview(r, t, ok, Offline());
  CHECK(a.annotated());
  CHECK(a.attempts == 1);
  CHECK(a.prompt_version == t.version());

  for (const auto& raw : MalformedOutputs()) {
    MockChatClient broken([&](const ChatRequest&) { return raw; });
    auto b = AnnotateReview(r, t, broken, Offline());
    CHECK_FALSE(b.annotated());
    CHECK(b.attempts == 3);
    CHECK(broken.calls() == 3);
    CHECK(b.failures.size() == 3);
    CHECK_FALSE(b.provider_failure);
  }

  std::atomic<int> n{0};
  MockChatClient flaky([&](const ChatRequest&) { return n++ < 2 ? std::string("oops") : good; });
  auto c = AnnotateReview(r, t, flaky, Offline());
  CHECK(c.annotated());
  CHECK(c.attempts == 3);
  CHECK(c.failures.size() == 2);

  MockChatClient down([](const ChatRequest&) -> std::string { throw ProviderError("503", true); });
  auto d = AnnotateReview(r, t, down, Offline(5));
  CHECK(d.attempts == 5);
  CHECK(d.provider_failure);
  CHECK_FALSE(d.annotated());

  MockChatClient denied([](const ChatRequest&) -> std::string { throw ProviderError("401", false); });
  auto e = AnnotateReview(r, t, denied, Offline());
  CHECK(e.attempts == 1);
  CHECK(e.provider_failure);

  auto json = nlohmann::json::parse(d.to_json().dump());
  CHECK(json["labels"].is_null());
  CHECK(json["annotated"] == false);
  auto back = Annotation::FromJson(json);
  CHECK(back.failures == d.failures);
  CHECK_FALSE(back.annotated());
}

TEST_CASE("parallel annotation keeps order and matches sequential") {
  auto t = PromptTemplate::Load(HAF_DATA_DIR "/prompts/identification.json");
  MockChatClient mock(RuleBackedResponder(Rules(), t));
  std::vector<Review> reviews;
  const char* texts[] = {"mura ang item", "bilis dumating", "bilis ng epekto", "Okay naman",
                         "Blue order ko pero pink dumating.", "legit seller, sulit"};
  for (int i = 0; i < 60; ++i) reviews.push_back(R("r" + std::to_string(i), texts[i % 6]));
  auto par = AnnotateAll(reviews, t, mock, Offline(3, 8));
  auto seq = AnnotateAll(reviews, t, mock, Offline(3, 1));
  REQUIRE(par.size() == 60);
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].review_id == reviews[i].id);
    CHECK(par[i].to_json().dump() == seq[i].to_json().dump());
  }
  CHECK(*par[0].labels == LabelVector::FromSlugs({"PRICE", "PRICE.Affordability"}));
  CHECK(par[4].labels->test(*haf::Taxonomy::find("DELIVERY.Correctness")));
}

TEST_CASE("span extraction through the mock") {
  auto t = PromptTemplate::Default();
  MockChatClient mock(RuleBackedResponder(Rules(), t));
  auto a = AnnotateReview(R("r", "Mura ang item at ang bilis dumating"), t, mock, Offline(),
                          AnnotateOptions{.extract_spans = true});
  REQUIRE(a.spans.has_value());
  CHECK(a.span_attempts == 1);
  bool saw_mura = false;
  for (const auto& s : *a.spans) saw_mura = saw_mura || (s.surface == "Mura" && s.start == 0);
  CHECK(saw_mura);

  MockChatClient liar([&](const ChatRequest& req) {
    if (req.messages[0].content.find(t.span_instruction()) != std::string::npos) {
      return std::string("{\"spans\": [{\"category\": \"PRICE\", \"text\": \"not there\"}]}");
    }
    return LabelVector::FromSlugs({"PRICE"}).to_json().dump();
  });
  auto b = AnnotateReview(R("r", "mura"), t, liar, Offline(), AnnotateOptions{.extract_spans = true});
  REQUIRE(b.spans.has_value());
  CHECK(b.spans->empty());
  CHECK(b.dropped_spans.size() == 1);
}

TEST_CASE("llm scorer") {
  auto t = PromptTemplate::Default();
  MockChatClient mock(RuleBackedResponder(Rules(), t));
  LlmScorer scorer(t, mock, Offline());
  auto s = scorer.Score(R("r", "mura ang item"));
  CHECK(s[*haf::Taxonomy::find("PRICE.Affordability")] == 1.0);
  MockChatClient broken([](const ChatRequest&) { return std::string("nope"); });
  LlmScorer failing(t, broken, Offline());
  CHECK_THROWS_AS(failing.Score(R("r", "x")), haf::hierarchy::ScorerError);
}

TEST_CASE("audit rounds") {
  std::vector<Annotation> annotations;
  for (int i = 0; i < 30; ++i) {
    Annotation a;
    a.review_id = "r" + std::to_string(i);
    a.prompt_version = "p-test";
    if (i != 29) a.labels = LabelVector::FromSlugs({"PRICE"});
    annotations.push_back(a);
  }
  AnnotationCampaign campaign("c1", "corpus.jsonl");
  CHECK(campaign.Unaudited(annotations).size() == 29);
  CHECK_THROWS_AS(campaign.SampleForAudit(annotations, 0, 1), haf::ValidationError);
  CHECK_THROWS_AS(campaign.SampleForAudit(annotations, 30, 1), haf::ValidationError);
  CHECK(campaign.SampleForAudit(annotations, 13, 5) == campaign.SampleForAudit(annotations, 13, 5));

  auto sample = campaign.SampleForAudit(annotations, 13, 5);
  std::map<std::string, bool> verdicts;
  for (std::size_t i = 0; i < sample.size(); ++i) verdicts[sample[i]] = i != 4;
  const auto& round = campaign.RecordAuditRound(annotations, sample, verdicts, 5);
  CHECK(round.round == 1);
  CHECK(round.correct() == 12);
  CHECK(std::abs(round.accuracy() - 0.9231) < 5e-5);
  CHECK(round.accuracy() == 12.0 / 13);

  // Audited reviews leave the pool.
  CHECK(campaign.Unaudited(annotations).size() == 16);
  auto& second = campaign.RunAuditRound(annotations, 16, 9, [](const std::string&, const LabelVector&) { return true; });
  CHECK(second.accuracy() == 1.0);
  CHECK(campaign.rounds().size() == 2);
  CHECK_THROWS_AS(campaign.SampleForAudit(annotations, 1, 1), haf::ValidationError);

  AnnotationCampaign other("c2", "x");
  std::map<std::string, bool> partial = {{"r0", true}};
  const std::vector<std::string> two = {"r0", "r1"};
  CHECK_THROWS_AS(other.RecordAuditRound(annotations, two, partial, 1), haf::ValidationError);
  const std::vector<std::string> unannotated = {"r29"};
  const std::map<std::string, bool> v29 = {{"r29", true}};
  CHECK_THROWS_AS(other.RecordAuditRound(annotations, unannotated, v29, 1), haf::ValidationError);
}

TEST_CASE("campaign log persists rounds") {
  std::vector<Annotation> annotations;
  for (int i = 0; i < 10; ++i) {
    Annotation a;
    a.review_id = "r" + std::to_string(i);
    a.prompt_version = "p-x";
    a.labels = LabelVector::FromSlugs({"SERVICE", "SERVICE.Trustworthiness"});
    annotations.push_back(a);
  }
  const auto path = TempPath("haf-campaign").string();
  {
    auto c = AnnotationCampaign::Create(path, "camp", "corpus.jsonl");
    c.RunAuditRound(annotations, 4, 1, [](const std::string& id, const LabelVector&) { return id != "r3"; });
    c.RunAuditRound(annotations, 3, 2, [](const std::string&, const LabelVector&) { return true; });
  }
  CHECK_THROWS_AS(AnnotationCampaign::Create(path, "camp", "x"), haf::ValidationError);
  auto loaded = AnnotationCampaign::Load(path);
  CHECK(loaded.id() == "camp");
  REQUIRE(loaded.rounds().size() == 2);
  CHECK(loaded.rounds()[1].items.size() == 3);
  CHECK(loaded.Unaudited(annotations).size() == 3);
  loaded.RunAuditRound(annotations, 3, 3, [](const std::string&, const LabelVector&) { return false; });
  CHECK(AnnotationCampaign::Load(path).rounds().size() == 3);
  CHECK(AnnotationCampaign::Load(path).rounds()[2].accuracy() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("annotation files round trip") {
  auto t = PromptTemplate::Default();
  MockChatClient mock(RuleBackedResponder(Rules(), t));
  std::vector<Review> reviews = {R("a", "mura ang item"), R("b", "Blue order ko pero pink dumating.")};
  auto annotations = AnnotateAll(reviews, t, mock, Offline(), AnnotateOptions{.extract_spans = true});
  Annotation failed;
  failed.review_id = "c";
  failed.prompt_version = t.version();
  failed.attempts = 3;
  failed.failures = {"parse: no JSON object found", "parse: no JSON object found", "provider: 503"};
  failed.provider_failure = true;
  annotations.push_back(failed);
  const std::string text = AnnotationsToJsonl(annotations, {{"model", "mock"}});
  auto back = ParseAnnotationsJsonl(text, "mem");
  REQUIRE(back.size() == 3);
  CHECK(AnnotationsToJsonl(back, {{"model", "mock"}}) == text);
  CHECK(back[1].spans == annotations[1].spans);
  CHECK_FALSE(back[2].annotated());

  const std::string header = text.substr(0, text.find('\n') + 1);
  const std::string first = text.substr(header.size(), text.find('\n', header.size()) - header.size() + 1);
  CHECK_THROWS_AS(ParseAnnotationsJsonl(first, "no-header"), haf::ValidationError);
  CHECK_THROWS_AS(ParseAnnotationsJsonl(header + first + first, "dup"), haf::ValidationError);
  CHECK_THROWS_AS(ParseAnnotationsJsonl(header + "{\"labels\": 1}\n", "bad"), haf::ValidationError);
  CHECK_THROWS_AS(ParseAnnotationsJsonl("", "empty"), haf::ValidationError);
}

TEST_CASE("provider config") {
  auto c = ProviderConfig::FromJson(nlohmann::json::parse(R"({"model": "m", "max_attempts": 5})"));
  CHECK(c.model == "m");
  CHECK(c.max_attempts == 5);
  CHECK(c.temperature == 0.0);
  CHECK_THROWS_AS(ProviderConfig::FromJson(nlohmann::json::parse(R"({"modle": "m"})")), haf::ValidationError);
  CHECK_THROWS_AS(ProviderConfig::FromJson(nlohmann::json::parse(R"({"max_attempts": 0})")), haf::ValidationError);
  CHECK_THROWS_AS(ProviderConfig::FromJson(nlohmann::json::parse(R"({"model": 3})")), haf::ValidationError);
  auto example = ProviderConfig::Load(HAF_DATA_DIR "/llm/provider.example.json");
  CHECK(example.max_attempts == 3);
}

TEST_CASE("http client against a local server") {
  httplib::Server server;
  std::string seen_auth, seen_body;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    seen_body = req.body;
    auto body = nlohmann::json::parse(req.body);
    const std::string last = body["messages"].back()["content"];
    if (last.find("fail500") != std::string::npos) {
      res.status = 500;
      return;
    }
    if (last.find("fail400") != std::string::npos) {
      res.status = 400;
      res.set_content("bad request", "text/plain");
      return;
    }
    nlohmann::json reply = {
        {"choices", {{{"message", {{"role", "assistant"}, {"content", "{\"PRICE\": true}"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  setenv("HAF_TEST_KEY", "secret", 1);
  ProviderConfig config;
  config.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/";
  config.api_key_env = "HAF_TEST_KEY";
  config.model = "test-model";
  config.timeout_seconds = 5;
  HttpChatClient client(config);
  auto t = PromptTemplate::Default();
  auto a = AnnotateReview(R("r", "mura"), t, client, config);
  CHECK(a.annotated());
  CHECK(*a.labels == LabelVector::FromSlugs({"PRICE"}));
  CHECK(seen_auth == "Bearer secret");
  CHECK(seen_body == BuildIdentificationRequest(R("r", "mura"), t, config).to_json().dump());

  try {
    client.Complete(BuildIdentificationRequest(R("r", "fail500"), t, config));
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.retryable());
  }
  try {
    client.Complete(BuildIdentificationRequest(R("r", "fail400"), t, config));
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK_FALSE(e.retryable());
  }
  server.stop();
  th.join();

  // Nobody listening any more.
  try {
    client.Complete(BuildIdentificationRequest(R("r", "x"), t, config));
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(e.retryable());
  }
  CHECK_THROWS_AS(HttpChatClient(ProviderConfig{.base_url = "localhost:80"}), haf::ValidationError);
}
