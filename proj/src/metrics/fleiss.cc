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


#include "haf/metrics/fleiss.h"

#include <string>

#include "haf/core/error.h"

namespace haf::metrics {

double FleissKappa(const std::vector<std::vector<int>>& counts) {
  if (counts.empty()) throw ValidationError("fleiss kappa needs at least one item");
  const std::size_t k = counts.front().size();
  if (k == 0) throw ValidationError("fleiss kappa needs at least one category");
  long long n = -1;
  std::vector<long long> column(k, 0);
  // A = sum of squared cells.
  __int128 a = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& row = counts[i];
    if (row.size() != k) {
      throw ValidationError("item " + std::to_string(i) + " has " + std::to_string(row.size()) +
                            " categories, expected " + std::to_string(k));
    }
    long long sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] < 0) throw ValidationError("negative count at item " + std::to_string(i));
      sum += row[j];
      column[j] += row[j];
      a += static_cast<__int128>(row[j]) * row[j];
    }
    if (n < 0) n = sum;
    if (sum != n) {
      throw ValidationError("item " + std::to_string(i) + " has " + std::to_string(sum) +
                            " ratings, expected " + std::to_string(n));
    }
  }
  if (n < 2) throw ValidationError("fleiss kappa needs at least two annotators per item");

  const __int128 t = static_cast<__int128>(counts.size()) * n;
  if (a == t * n) return 1.0;
  __int128 c = 0;
  for (long long col : column) c += static_cast<__int128>(col) * col;
  // (Pbar - Pe) / (1 - Pe) with the common factor T^2 (n - 1) cleared:
  // ((A - T) T - C (n - 1)) / ((T^2 - C)(n - 1)).
  const __int128 num = (a - t) * t - c * (n - 1);
  const __int128 den = (t * t - c) * (n - 1);
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

double FleissKappaFromRatings(const std::vector<std::vector<int>>& ratings, int k) {
  if (k < 1) throw ValidationError("fleiss kappa needs at least one category");
  std::vector<std::vector<int>> counts;
  counts.reserve(ratings.size());
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    std::vector<int> row(k, 0);
    for (int r : ratings[i]) {
      if (r < 0 || r >= k) {
        throw ValidationError("category " + std::to_string(r) + " out of range at item " +
                              std::to_string(i));
      }
      ++row[r];
    }
    counts.push_back(std::move(row));
  }
  return FleissKappa(counts);
}

MultiLabelAgreement MultiLabelFleiss(const std::vector<std::vector<LabelVector>>& items,
                                     std::span<const LabelIndex> labels) {
  if (items.empty()) throw ValidationError("agreement needs at least one shared item");
  if (labels.empty()) throw ValidationError("agreement needs at least one label");
  MultiLabelAgreement out;
  out.n_items = items.size();
  out.n_annotators = items.front().size();
  double sum = 0;
  for (LabelIndex label : labels) {
    std::vector<std::vector<int>> counts;
    counts.reserve(items.size());
    for (const auto& raters : items) {
      int present = 0;
      for (const auto& v : raters) present += v.test(label) ? 1 : 0;
      counts.push_back({static_cast<int>(raters.size()) - present, present});
    }
    const double kappa = FleissKappa(counts);
    out.per_label.push_back({label, kappa});
    sum += kappa;
  }
  out.mean = sum / static_cast<double>(labels.size());
  return out;
}

}  // namespace haf::metrics
