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


#ifndef HAF_METRICS_REPORT_H_
#define HAF_METRICS_REPORT_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "haf/metrics/multilabel.h"
#include "haf/metrics/span_f1.h"
#include "json.hpp"

namespace haf::metrics {

inline constexpr int kReportVersion = 1;

struct EvalReport {
  Scope scope = Scope::kGeneral;
  std::size_t n_items = 0;
  std::size_t n_labels = 0;
  double exact_match = 0;
  double hamming_loss = 0;
  double macro_f1 = 0;
  double micro_f1 = 0;
  Prf micro;
  std::vector<LabelPrf> per_label;
  // For the general scope a category row is its own label; otherwise it pools
  // the child specifics of the category.
  std::array<CategoryPrf, kNumGenerals> per_category;
  // Predictions that break the hierarchy (reported, not repaired).
  std::size_t inconsistent_predictions = 0;
};

EvalReport Evaluate(std::span<const LabelVector> gold, std::span<const LabelVector> pred,
                    Scope scope);

nlohmann::ordered_json ToJson(const EvalReport& report);

using NamedReport = std::pair<std::string, EvalReport>;

// Plain text table: an overall block (one column per system) followed by a
// per-category P/R/F1 block.
std::string FormatTable(std::span<const NamedReport> reports);

nlohmann::ordered_json ToJson(const std::array<TokenF1Row, kNumGenerals>& rows);
std::string FormatTokenF1Table(
    std::span<const std::pair<std::string, std::array<TokenF1Row, kNumGenerals>>> systems);

}  // namespace haf::metrics

#endif  // HAF_METRICS_REPORT_H_
