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


#include "haf/metrics/report.h"

#include <cstdio>

namespace haf::metrics {
namespace {

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string PadLeft(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

nlohmann::ordered_json CountsJson(const Confusion& c, bool with_tn) {
  nlohmann::ordered_json j;
  j["tp"] = c.tp;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  if (with_tn) j["tn"] = c.tn;
  return j;
}

nlohmann::ordered_json PrfJson(const Prf& p) {
  nlohmann::ordered_json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  nlohmann::ordered_json undefined = nlohmann::ordered_json::array();
  if (p.precision_undefined) undefined.push_back("precision");
  if (p.recall_undefined) undefined.push_back("recall");
  if (p.f1_undefined) undefined.push_back("f1");
  j["undefined"] = undefined;
  return j;
}

}  // namespace

EvalReport Evaluate(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                    Scope scope) {
  EvalReport r;
  r.scope = scope;
  const auto labels = LabelsIn(scope);
  r.n_items = gold.size();
  r.n_labels = labels.size();
  r.exact_match = ExactMatch(gold, pred, labels);
  r.hamming_loss = HammingLoss(gold, pred, labels);
  auto prf = PrfPerLabel(gold, pred, labels);
  r.macro_f1 = prf.macro_f1;
  r.micro = prf.micro;
  r.micro_f1 = prf.micro.f1;
  r.per_label = std::move(prf.per_label);
  if (scope == Scope::kGeneral) {
    for (int g = 0; g < kNumGenerals; ++g) {
      r.per_category[g].category = static_cast<General>(g);
      r.per_category[g].counts = r.per_label[g].counts;
      r.per_category[g].prf = r.per_label[g].prf;
    }
  } else {
    r.per_category = CategoryPrfs(gold, pred);
  }
  for (const auto& v : pred) r.inconsistent_predictions += v.is_consistent() ? 0 : 1;
  return r;
}

nlohmann::ordered_json ToJson(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "haf.eval_report";
  j["version"] = kReportVersion;
  j["scope"] = std::string(to_string(r.scope));
  j["n_items"] = r.n_items;
  j["n_labels"] = r.n_labels;
  j["exact_match"] = r.exact_match;
  j["hamming_loss"] = r.hamming_loss;
  j["macro_f1"] = r.macro_f1;
  j["micro_f1"] = r.micro_f1;
  j["micro"] = PrfJson(r.micro);
  j["inconsistent_predictions"] = r.inconsistent_predictions;
  nlohmann::ordered_json cats = nlohmann::ordered_json::object();
  for (const auto& c : r.per_category) {
    auto row = PrfJson(c.prf);
    row["counts"] = CountsJson(c.counts, false);
    cats[std::string(to_string(c.category))] = row;
  }
  j["per_category"] = cats;
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (const auto& l : r.per_label) {
    auto row = PrfJson(l.prf);
    row["counts"] = CountsJson(l.counts, true);
    labels[std::string(Taxonomy::slug(l.label))] = row;
  }
  j["per_label"] = labels;
  return j;
}

std::string FormatTable(std::span<const NamedReport> reports) {
  constexpr std::size_t kFirst = 24;
  constexpr std::size_t kCol = 14;
  std::string out;
  if (reports.empty()) return out;

  out += Pad("Metric", kFirst);
  for (const auto& [name, r] : reports) out += PadLeft(name, kCol);
  out += '\n';
  const std::pair<const char*, double EvalReport::*> rows[] = {
      {"Exact Match", &EvalReport::exact_match},
      {"Hamming Loss", &EvalReport::hamming_loss},
      {"Macro F1", &EvalReport::macro_f1},
      {"Micro F1", &EvalReport::micro_f1},
  };
  for (const auto& [label, field] : rows) {
    out += Pad(label, kFirst);
    for (const auto& [name, r] : reports) out += PadLeft(Fixed(r.*field), kCol);
    out += '\n';
  }

  out += '\n';
  out += Pad("Category", kFirst);
  for (const auto& [name, r] : reports) {
    out += PadLeft(name + " P", kCol);
    out += PadLeft(name + " R", kCol);
    out += PadLeft(name + " F1", kCol);
  }
  out += '\n';
  for (int g = 0; g < kNumGenerals; ++g) {
    out += Pad(std::string(Taxonomy::generals()[g].display), kFirst);
    for (const auto& [name, r] : reports) {
      const auto& p = r.per_category[g].prf;
      out += PadLeft(Fixed(p.precision), kCol);
      out += PadLeft(Fixed(p.recall), kCol);
      out += PadLeft(Fixed(p.f1), kCol);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json ToJson(const std::array<TokenF1Row, kNumGenerals>& rows) {
  nlohmann::ordered_json j;
  j["schema"] = "haf.token_f1";
  j["version"] = kReportVersion;
  nlohmann::ordered_json cats = nlohmann::ordered_json::object();
  for (const auto& row : rows) {
    auto c = PrfJson(row.prf);
    c["counts"] = CountsJson(row.counts, false);
    cats[std::string(to_string(row.category))] = c;
  }
  j["per_category"] = cats;
  return j;
}

std::string FormatTokenF1Table(
    std::span<const std::pair<std::string, std::array<TokenF1Row, kNumGenerals>>> systems) {
  constexpr std::size_t kFirst = 24;
  constexpr std::size_t kCol = 14;
  std::string out = Pad("Category", kFirst);
  for (const auto& [name, rows] : systems) out += PadLeft(name, kCol);
  out += '\n';
  for (int g = 0; g < kNumGenerals; ++g) {
    out += Pad(std::string(Taxonomy::generals()[g].display), kFirst);
    for (const auto& [name, rows] : systems) out += PadLeft(Fixed(rows[g].prf.f1), kCol);
    out += '\n';
  }
  return out;
}

}  // namespace haf::metrics
