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


#include "haf/cli/cli.h"

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "haf/corpus/align.h"
#include "haf/corpus/corpus.h"
#include "haf/corpus/split.h"
#include "haf/hierarchy/predict.h"
#include "haf/hierarchy/scorer.h"
#include "haf/llm/annotator.h"
#include "haf/llm/campaign.h"
#include "haf/llm/mock.h"
#include "haf/metrics/report.h"
#include "haf/rules/rule_config.h"
#include "haf/rules/tagger.h"
#include "haf/service/http_service.h"
#include "httplib.h"

namespace haf::cli {
namespace {

using OJson = nlohmann::ordered_json;

struct Io {
  std::ostream& out;
  std::ostream& err;
  std::istream& in;
};

// Failure the CLI reports as exit 1: bad usage of the file system and the
// like, as opposed to bad data.
class CliError : public Error {
 public:
  using Error::Error;
};

void Emit(Io& io, const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    io.out << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw CliError("cannot write '" + path + "'");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<corpus::Format> FormatOption(const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto f = corpus::ParseFormat(name);
  if (!f) throw ValidationError("unknown format '" + name + "'");
  return f;
}

corpus::Corpus Load(const std::string& path, const std::string& format, bool require_text) {
  corpus::LoadOptions options;
  options.require_text = require_text;
  return corpus::LoadCorpus(path, FormatOption(format), options).corpus;
}

std::string Stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// ---- tag ------------------------------------------------------------------

struct TagArgs {
  std::string rules, in, out, format;
  bool spans = false;
};

int RunTag(const TagArgs& a, Io& io) {
  const auto config = rules::RuleConfig::Load(a.rules);
  const auto input = Load(a.in, a.format, true);
  std::vector<corpus::Entry> entries;
  entries.reserve(input.size());
  for (const auto& e : input.entries()) {
    auto result = rules::TagReview(e.review, config);
    corpus::Entry p{e.review, result.labels, std::nullopt};
    if (a.spans) {
      p.spans.emplace();
      for (const auto& m : result.matches) p.spans->push_back(m.span);
    }
    entries.push_back(std::move(p));
  }
  nlohmann::json meta = {{"name", Stem(a.in) + ".rules"},
                         {"predictor", "rules"},
                         {"rules_version", config.version()}};
  Emit(io, a.out, corpus::ToJsonl(corpus::Corpus(std::move(entries), meta)));
  return kExitOk;
}

// ---- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string gold, scope = "general", report = "json", out;
  std::vector<std::string> preds;
  bool spans = false;
};

std::pair<std::string, std::string> NamedPath(const std::string& arg) {
  auto eq = arg.find('=');
  if (eq != std::string::npos && eq > 0) return {arg.substr(0, eq), arg.substr(eq + 1)};
  return {Stem(arg), arg};
}

int RunEvaluate(const EvaluateArgs& a, Io& io) {
  auto scope = metrics::ParseScope(a.scope);
  if (!scope) throw ValidationError("scope must be general, specific or all");
  if (a.report != "json" && a.report != "table") throw ValidationError("report must be json or table");
  const auto gold = Load(a.gold, "", false);
  gold.Validate();

  if (a.spans) {
    std::vector<std::pair<std::string, std::array<metrics::TokenF1Row, kNumGenerals>>> systems;
    for (const auto& arg : a.preds) {
      auto [name, path] = NamedPath(arg);
      auto aligned = corpus::AlignSpans(gold, Load(path, "", false));
      std::vector<metrics::ReviewSpans> g, p;
      for (std::size_t i = 0; i < aligned.ids.size(); ++i) {
        g.push_back({aligned.ids[i], aligned.gold[i]});
        p.push_back({aligned.ids[i], aligned.pred[i]});
      }
      systems.emplace_back(name, metrics::TokenF1(g, p));
    }
    if (a.report == "table") {
      Emit(io, a.out, metrics::FormatTokenF1Table(systems));
    } else if (systems.size() == 1) {
      Emit(io, a.out, metrics::ToJson(systems[0].second).dump(2) + "\n");
    } else {
      OJson doc{{"schema", "haf.token_f1_comparison"}, {"version", 1}, {"systems", OJson::array()}};
      for (const auto& [name, rows] : systems) {
        doc["systems"].push_back({{"name", name}, {"report", metrics::ToJson(rows)}});
      }
      Emit(io, a.out, doc.dump(2) + "\n");
    }
    return kExitOk;
  }

  std::vector<metrics::NamedReport> reports;
  for (const auto& arg : a.preds) {
    auto [name, path] = NamedPath(arg);
    auto aligned = corpus::AlignLabels(gold, Load(path, "", false));
    reports.emplace_back(name, metrics::Evaluate(aligned.gold, aligned.pred, *scope));
  }
  if (a.report == "table") {
    Emit(io, a.out, metrics::FormatTable(reports));
  } else if (reports.size() == 1) {
    Emit(io, a.out, metrics::ToJson(reports[0].second).dump(2) + "\n");
  } else {
    OJson doc{{"schema", "haf.eval_comparison"}, {"version", 1}, {"systems", OJson::array()}};
    for (const auto& [name, report] : reports) {
      doc["systems"].push_back({{"name", name}, {"report", metrics::ToJson(report)}});
    }
    Emit(io, a.out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

// ---- annotate -------------------------------------------------------------

struct AnnotateArgs {
  std::string provider, template_path, in, out, pred_out, rules, format;
  bool spans = false;
  int parallelism = 0;
};

int RunAnnotate(const AnnotateArgs& a, Io& io) {
  const auto t = a.template_path.empty() ? llm::PromptTemplate::Default()
                                         : llm::PromptTemplate::Load(a.template_path);
  const auto input = Load(a.in, a.format, true);
  std::vector<Review> reviews;
  for (const auto& e : input.entries()) reviews.push_back(e.review);

  llm::ProviderConfig config;
  std::unique_ptr<llm::ChatClient> client;
  std::optional<rules::RuleConfig> mock_rules;
  if (a.provider == "mock") {
    if (a.rules.empty()) throw ValidationError("--provider mock needs --rules");
    mock_rules = rules::RuleConfig::Load(a.rules);
    config.base_url = "mock://";
    config.model = "mock-rules";
    client = std::make_unique<llm::MockChatClient>(llm::RuleBackedResponder(*mock_rules, t));
  } else {
    config = llm::ProviderConfig::Load(a.provider);
    client = std::make_unique<llm::HttpChatClient>(config);
  }
  if (a.parallelism > 0) config.parallelism = a.parallelism;

  auto annotations = llm::AnnotateAll(reviews, t, *client, config,
                                      llm::AnnotateOptions{.extract_spans = a.spans});

  OJson meta{{"corpus", a.in}, {"model", config.model}, {"prompt_version", t.version()},
             {"template", t.name()}};
  Emit(io, a.out, llm::AnnotationsToJsonl(annotations, meta));

  std::size_t annotated = 0, provider_failures = 0, repairs = 0;
  std::vector<corpus::Entry> predictions;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& an = annotations[i];
    repairs += an.repairs;
    if (an.provider_failure) ++provider_failures;
    if (!an.annotated()) continue;
    ++annotated;
    predictions.push_back({reviews[i], an.labels, an.spans});
  }
  if (!a.pred_out.empty()) {
    nlohmann::json pmeta = {{"name", Stem(a.in) + ".llm"},
                            {"predictor", "llm"},
                            {"model", config.model},
                            {"prompt_version", t.version()}};
    Emit(io, a.pred_out, corpus::ToJsonl(corpus::Corpus(std::move(predictions), pmeta)));
  }
  OJson summary{{"reviews", annotations.size()},
                {"annotated", annotated},
                {"unannotated", annotations.size() - annotated},
                {"provider_failures", provider_failures},
                {"repairs", repairs},
                {"prompt_version", t.version()}};
  io.err << OJson{{"summary", summary}}.dump() << "\n";
  if (provider_failures > 0) {
    io.err << OJson{{"error", {{"kind", "provider"},
                               {"message", std::to_string(provider_failures) +
                                               " reviews failed at the provider"}}}}
                  .dump()
           << "\n";
    return kExitProvider;
  }
  return kExitOk;
}

// ---- audit ----------------------------------------------------------------

struct AuditArgs {
  std::string campaign, annotations, verdicts, corpus, campaign_id;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  bool dry_run = false;
};

int RunAudit(const AuditArgs& a, Io& io) {
  const auto annotations = llm::LoadAnnotations(a.annotations);
  auto campaign = std::filesystem::exists(a.campaign)
                      ? llm::AnnotationCampaign::Load(a.campaign)
                      : llm::AnnotationCampaign::Create(
                            a.campaign, a.campaign_id.empty() ? Stem(a.campaign) : a.campaign_id,
                            a.annotations);
  auto sample = campaign.SampleForAudit(annotations, a.sample, a.seed);
  if (a.dry_run) {
    io.out << OJson{{"campaign", campaign.id()}, {"seed", a.seed}, {"sample", sample}}.dump(2) << "\n";
    return kExitOk;
  }

  std::map<std::string, bool> verdicts;
  if (!a.verdicts.empty()) {
    nlohmann::json v;
    try {
      v = nlohmann::json::parse(ReadFile(a.verdicts));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(a.verdicts + ": " + e.what());
    }
    if (!v.is_object()) throw ValidationError(a.verdicts + ": expected an object of id -> bool");
    for (const auto& id : sample) {
      auto it = v.find(id);
      if (it == v.end() || !it->is_boolean()) {
        throw ValidationError(a.verdicts + ": no boolean verdict for sampled review '" + id + "'");
      }
      verdicts[id] = it->get<bool>();
    }
  } else {
    std::optional<corpus::Corpus> texts;
    if (!a.corpus.empty()) texts = Load(a.corpus, "", true);
    std::map<std::string, const llm::Annotation*> by_id;
    for (const auto& an : annotations) by_id[an.review_id] = &an;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto& id = sample[i];
      io.err << "[" << (i + 1) << "/" << sample.size() << "] " << id << "\n";
      if (texts) {
        if (const corpus::Entry* e = texts->find(id)) io.err << "  text:   " << e->review.text << "\n";
      }
      io.err << "  labels: " << to_string(*by_id.at(id)->labels) << "\n";
      for (;;) {
        io.err << "  correct? [y/n] " << std::flush;
        std::string line;
        if (!std::getline(io.in, line)) throw ValidationError("verdict session ended early");
        if (line == "y" || line == "Y") {
          verdicts[id] = true;
        } else if (line == "n" || line == "N") {
          verdicts[id] = false;
        } else {
          continue;
        }
        break;
      }
    }
  }
  const auto& round = campaign.RecordAuditRound(annotations, sample, verdicts, a.seed);
  OJson out = round.to_json();
  out["accuracy"] = round.accuracy();
  out["correct"] = round.correct();
  io.out << out.dump(2) << "\n";
  return kExitOk;
}

// ---- split ----------------------------------------------------------------

struct SplitArgs {
  std::string in, format, train_out, test_out, stratify;
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
};

int RunSplit(const SplitArgs& a, Io& io) {
  const auto input = Load(a.in, a.format, true);
  corpus::SplitSpec spec;
  spec.seed = a.seed;
  spec.test_fraction = a.test_fraction;
  spec.train_fraction = 1.0 - a.test_fraction;
  if (!a.stratify.empty()) {
    auto label = Taxonomy::find(a.stratify);
    if (!label) throw LabelError("unknown label '" + a.stratify + "'");
    spec.stratify_by = *label;
  }
  auto split = corpus::SplitCorpus(input, spec);
  Emit(io, a.train_out, corpus::ToJsonl(split.train));
  Emit(io, a.test_out, corpus::ToJsonl(split.test));
  OJson summary{{"seed", a.seed}, {"train", split.train.size()}, {"test", split.test.size()}};
  if (spec.stratify_by) {
    auto positives = [&](const corpus::Corpus& c) {
      std::size_t n = 0;
      for (const auto& e : c.entries()) n += e.gold && e.gold->test(*spec.stratify_by) ? 1 : 0;
      return n;
    };
    summary["stratify_by"] = Taxonomy::slug(*spec.stratify_by);
    summary["train_positives"] = positives(split.train);
    summary["test_positives"] = positives(split.test);
  }
  io.err << OJson{{"summary", summary}}.dump() << "\n";
  return kExitOk;
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::string in, format, out;
};

int RunStats(const StatsArgs& a, Io& io) {
  const auto input = Load(a.in, a.format, true);
  input.Validate();
  OJson doc{{"schema", "haf.corpus_stats"}, {"version", 1}, {"corpus", a.in}};
  doc["distribution"] = corpus::ComputeLabelDistribution(input).to_json();
  doc["class_weights"] = hierarchy::InverseFrequencyWeights(input.GoldLabels()).to_json();
  Emit(io, a.out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
  std::string in, format, rules, template_path, provider;
  bool allow_missing_text = false;
};

int RunValidate(const ValidateArgs& a, Io& io) {
  OJson report{{"schema", "haf.validation_report"}, {"version", 1}};
  OJson issues = OJson::array();
  std::string kind, source;
  std::size_t count = 0;
  auto message = [&](std::size_t line, const std::string& id, const std::string& text) {
    OJson issue{{"line", line}};
    if (!id.empty()) issue["id"] = id;
    issue["message"] = text;
    issues.push_back(std::move(issue));
  };
  if (!a.in.empty()) {
    kind = "corpus";
    source = a.in;
    corpus::LoadOptions options;
    options.lenient = true;
    options.require_text = !a.allow_missing_text;
    try {
      auto result = corpus::LoadCorpus(a.in, FormatOption(a.format), options);
      count = result.corpus.size();
      for (const auto& q : result.quarantined) issues.push_back(q.to_json());
    } catch (const corpus::CorpusError& e) {
      for (const auto& q : e.issues()) issues.push_back(q.to_json());
    }
  } else if (!a.rules.empty()) {
    kind = "rules";
    source = a.rules;
    try {
      auto config = rules::RuleConfig::Load(a.rules);
      count = config.lexicon().size() + config.disambiguation().size();
    } catch (const rules::RuleConfigError& e) {
      for (const auto& d : e.diagnostics()) message(d.line, "", d.message);
    }
  } else if (!a.template_path.empty()) {
    kind = "prompt_template";
    source = a.template_path;
    try {
      auto t = llm::PromptTemplate::Load(a.template_path);
      count = t.examples().size();
      report["prompt_version"] = t.version();
    } catch (const ValidationError& e) {
      message(0, "", e.what());
    }
  } else if (!a.provider.empty()) {
    kind = "provider";
    source = a.provider;
    try {
      llm::ProviderConfig::Load(a.provider);
      count = 1;
    } catch (const ValidationError& e) {
      message(0, "", e.what());
    }
  } else {
    throw ValidationError("validate needs one of --in, --rules, --template or --provider");
  }
  report["kind"] = kind;
  report["source"] = source;
  report["ok"] = issues.empty();
  report["count"] = count;
  report["issues"] = issues;
  io.out << report.dump(2) << "\n";
  return issues.empty() ? kExitOk : kExitValidation;
}

// ---- predict --------------------------------------------------------------

struct PredictArgs {
  std::string in, format, out, scores, rules, mode = "hierarchical", gate;
  double threshold = hierarchy::kDefaultThreshold;
};

int RunPredict(const PredictArgs& a, Io& io) {
  if (a.scores.empty() == a.rules.empty()) throw ValidationError("give exactly one of --scores or --rules");
  if (a.mode != "flat" && a.mode != "hierarchical") throw ValidationError("mode must be flat or hierarchical");
  if (!a.gate.empty() && a.mode == "flat") throw ValidationError("--gate needs --mode hierarchical");
  const auto input = Load(a.in, a.format, a.scores.empty());
  std::unique_ptr<hierarchy::LabelScorer> scorer;
  std::optional<rules::RuleConfig> config;
  if (!a.scores.empty()) {
    scorer = std::make_unique<hierarchy::ScoreTableScorer>(hierarchy::ScoreTableScorer::Load(a.scores));
  } else {
    config = rules::RuleConfig::Load(a.rules);
    scorer = std::make_unique<hierarchy::RuleScorer>(*config);
  }
  auto set = hierarchy::ScorerSet::Uniform(*scorer);
  set.Validate();
  std::optional<corpus::Corpus> gate;
  if (!a.gate.empty()) {
    gate = Load(a.gate, "", false);
    gate->Validate();
  }
  std::vector<corpus::Entry> entries;
  std::size_t inconsistent = 0;
  for (const auto& e : input.entries()) {
    LabelVector labels;
    if (a.mode == "flat") {
      auto flat = hierarchy::PredictFlat(e.review, set, a.threshold);
      inconsistent += flat.inconsistent > 0 ? 1 : 0;
      labels = flat.labels;
    } else if (gate) {
      const corpus::Entry* g = gate->find(e.review.id);
      if (g == nullptr || !g->gold) throw ValidationError("no gold gate for review '" + e.review.id + "'");
      labels = hierarchy::PredictHierarchical(e.review, set, a.threshold, &*g->gold);
    } else {
      labels = hierarchy::PredictHierarchical(e.review, set, a.threshold);
    }
    entries.push_back({e.review, labels, std::nullopt});
  }
  nlohmann::json meta = {{"name", Stem(a.in) + "." + a.mode},
                         {"predictor", a.scores.empty() ? "rules" : "score_table"},
                         {"mode", a.mode},
                         {"threshold", a.threshold},
                         {"gate", a.gate.empty() ? "predicted" : "gold"}};
  Emit(io, a.out, corpus::ToJsonl(corpus::Corpus(std::move(entries), meta)));
  io.err << OJson{{"summary", {{"reviews", input.size()}, {"inconsistent_flat_predictions", inconsistent}}}}.dump()
         << "\n";
  return kExitOk;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1", store, rules, corpus;
  int port = 8080;
};

volatile std::sig_atomic_t g_stop = 0;

void OnSignal(int) { g_stop = 1; }

int RunServe(const ServeArgs& a, Io& io) {
  service::ServiceOptions options;
  options.store_dir = a.store;
  options.rules = std::make_shared<rules::RuleConfig>(rules::RuleConfig::Load(a.rules));
  if (!a.corpus.empty()) {
    auto c = Load(a.corpus, "", true);
    c.Validate();
    options.corpus = std::make_shared<corpus::Corpus>(std::move(c));
  }
  options.token = service::TokenFromEnv();
  service::HttpService svc(std::move(options));
  httplib::Server server;
  svc.Register(server);

  int port = a.port;
  if (port == 0) {
    port = server.bind_to_any_port(a.host);
  } else if (!server.bind_to_port(a.host, port)) {
    port = -1;
  }
  if (port < 0) throw CliError("cannot listen on " + a.host + ":" + std::to_string(a.port));

  g_stop = 0;
  auto previous_int = std::signal(SIGINT, OnSignal);
  auto previous_term = std::signal(SIGTERM, OnSignal);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done.load()) {
      if (g_stop) {
        server.stop();
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });
  io.err << OJson{{"listening", {{"host", a.host},
                                 {"port", port},
                                 {"store", a.store},
                                 {"auth", svc.options().token.has_value()}}}}
                .dump()
         << std::endl;
  const bool ok = server.listen_after_bind();
  done = true;
  watcher.join();
  std::signal(SIGINT, previous_int);
  std::signal(SIGTERM, previous_term);
  return ok || g_stop ? kExitOk : kExitFailure;
}

// ---- driver ---------------------------------------------------------------

void Diagnose(Io& io, const std::string& kind, const std::string& message,
              const OJson& extra = OJson()) {
  OJson error{{"kind", kind}, {"message", message}};
  if (!extra.is_null()) error["issues"] = extra;
  io.err << OJson{{"error", error}}.dump() << "\n";
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  Io io{out, err, in};
  CLI::App app{"Hierarchical aspect tagging, annotation and evaluation for Taglish reviews", "haf"};
  app.require_subcommand(1);

  TagArgs tag;
  auto* tag_cmd = app.add_subcommand("tag", "Run the rule engine over a corpus");
  tag_cmd->add_option("--rules", tag.rules, "Rule configuration (JSON)")->required();
  tag_cmd->add_option("--in", tag.in, "Input corpus")->required();
  tag_cmd->add_option("--out", tag.out, "Prediction corpus (default stdout)");
  tag_cmd->add_option("--format", tag.format, "Input format: jsonl or csv (default by extension)");
  tag_cmd->add_flag("--spans", tag.spans, "Write rule match spans");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against gold labels");
  eval_cmd->add_option("--gold", eval.gold, "Gold corpus")->required();
  eval_cmd->add_option("--pred", eval.preds, "Prediction corpus, optionally NAME=PATH; repeatable")
      ->required();
  eval_cmd->add_option("--scope", eval.scope, "general, specific or all")->capture_default_str();
  eval_cmd->add_option("--report", eval.report, "json or table")->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Output file (default stdout)");
  eval_cmd->add_flag("--spans", eval.spans, "Token-level span F1 instead of label metrics");

  AnnotateArgs ann;
  auto* ann_cmd = app.add_subcommand("annotate", "Label a corpus with an LLM");
  ann_cmd->add_option("--provider", ann.provider, "Provider config (JSON) or 'mock'")->required();
  ann_cmd->add_option("--template", ann.template_path, "Prompt template (JSON)");
  ann_cmd->add_option("--in", ann.in, "Input corpus")->required();
  ann_cmd->add_option("--out", ann.out, "Annotation file (default stdout)");
  ann_cmd->add_option("--pred-out", ann.pred_out, "Also write annotated reviews as a prediction corpus");
  ann_cmd->add_option("--rules", ann.rules, "Rule configuration backing the mock provider");
  ann_cmd->add_option("--format", ann.format, "Input format: jsonl or csv");
  ann_cmd->add_option("--parallelism", ann.parallelism, "Concurrent requests (overrides config)");
  ann_cmd->add_flag("--spans", ann.spans, "Also extract aspect spans");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Record a human audit round of LLM labels");
  audit_cmd->add_option("--campaign", audit.campaign, "Campaign log (created if missing)")->required();
  audit_cmd->add_option("--campaign-id", audit.campaign_id, "Id for a new campaign");
  audit_cmd->add_option("--annotations", audit.annotations, "Annotation file")->required();
  audit_cmd->add_option("--sample", audit.sample, "Reviews to audit")->required();
  audit_cmd->add_option("--seed", audit.seed, "Sampling seed")->capture_default_str();
  audit_cmd->add_option("--verdicts", audit.verdicts, "JSON object of review id -> correct");
  audit_cmd->add_option("--corpus", audit.corpus, "Corpus used to show review text");
  audit_cmd->add_flag("--dry-run", audit.dry_run, "Print the sample and stop");

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Deterministic train/test split");
  split_cmd->add_option("--in", split.in, "Input corpus")->required();
  split_cmd->add_option("--format", split.format, "Input format: jsonl or csv");
  split_cmd->add_option("--seed", split.seed, "Shuffle seed")->capture_default_str();
  split_cmd->add_option("--test-fraction", split.test_fraction, "Test share in (0, 1)")
      ->capture_default_str();
  split_cmd->add_option("--stratify", split.stratify, "Label slug to stratify on");
  split_cmd->add_option("--train-out", split.train_out, "Train corpus")->required();
  split_cmd->add_option("--test-out", split.test_out, "Test corpus")->required();

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Label distribution and class weights");
  stats_cmd->add_option("--in", stats.in, "Corpus with gold labels")->required();
  stats_cmd->add_option("--format", stats.format, "Input format: jsonl or csv");
  stats_cmd->add_option("--out", stats.out, "Output file (default stdout)");

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Check a corpus or config file");
  val_cmd->add_option("--in", val.in, "Corpus");
  val_cmd->add_option("--format", val.format, "Corpus format: jsonl or csv");
  val_cmd->add_flag("--allow-missing-text", val.allow_missing_text, "Accept rows without text");
  val_cmd->add_option("--rules", val.rules, "Rule configuration");
  val_cmd->add_option("--template", val.template_path, "Prompt template");
  val_cmd->add_option("--provider", val.provider, "Provider config");

  PredictArgs pred;
  auto* pred_cmd = app.add_subcommand("predict", "Flat or gated prediction from label scorers");
  pred_cmd->add_option("--in", pred.in, "Input corpus")->required();
  pred_cmd->add_option("--format", pred.format, "Input format: jsonl or csv");
  pred_cmd->add_option("--scores", pred.scores, "Score table (JSONL of review_id and slug scores)");
  pred_cmd->add_option("--rules", pred.rules, "Rule configuration used as a 0/1 scorer");
  pred_cmd->add_option("--mode", pred.mode, "flat or hierarchical")->capture_default_str();
  pred_cmd->add_option("--threshold", pred.threshold, "Score threshold (>=)")->capture_default_str();
  pred_cmd->add_option("--gate", pred.gate, "Gold corpus whose generals gate stage two");
  pred_cmd->add_option("--out", pred.out, "Prediction corpus (default stdout)");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP service");
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port; 0 picks a free one")->capture_default_str();
  serve_cmd->add_option("--store", serve.store, "Calibration store directory")->required();
  serve_cmd->add_option("--rules", serve.rules, "Rule configuration for /tag")->required();
  serve_cmd->add_option("--corpus", serve.corpus, "Review pool for calibration rounds");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    Diagnose(io, "usage", e.what());
    return kExitValidation;
  }

  try {
    if (*tag_cmd) return RunTag(tag, io);
    if (*eval_cmd) return RunEvaluate(eval, io);
    if (*ann_cmd) return RunAnnotate(ann, io);
    if (*audit_cmd) return RunAudit(audit, io);
    if (*split_cmd) return RunSplit(split, io);
    if (*stats_cmd) return RunStats(stats, io);
    if (*val_cmd) return RunValidate(val, io);
    if (*pred_cmd) return RunPredict(pred, io);
    if (*serve_cmd) return RunServe(serve, io);
  } catch (const llm::ProviderError& e) {
    Diagnose(io, "provider", e.what());
    return kExitProvider;
  } catch (const corpus::CorpusError& e) {
    OJson issues = OJson::array();
    for (const auto& i : e.issues()) issues.push_back(i.to_json());
    Diagnose(io, "validation", e.what(), issues);
    return kExitValidation;
  } catch (const rules::RuleConfigError& e) {
    OJson issues = OJson::array();
    for (const auto& d : e.diagnostics()) issues.push_back({{"line", d.line}, {"message", d.message}});
    Diagnose(io, "validation", e.what(), issues);
    return kExitValidation;
  } catch (const ValidationError& e) {
    Diagnose(io, "validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    Diagnose(io, "failure", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace haf::cli
