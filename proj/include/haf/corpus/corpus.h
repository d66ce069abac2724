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


#ifndef HAF_CORPUS_CORPUS_H_
#define HAF_CORPUS_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/error.h"
#include "haf/core/label_vector.h"
#include "haf/core/review.h"
#include "json.hpp"

namespace haf::corpus {

inline constexpr std::string_view kCorpusSchema = "haf.corpus";
inline constexpr int kCorpusVersion = 1;

struct Entry {
  Review review;
  std::optional<LabelVector> gold;
  std::optional<std::vector<AspectSpan>> spans;

  friend bool operator==(const Entry&, const Entry&) = default;
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Entry> entries, nlohmann::json metadata = nlohmann::json::object());

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  // Free-form header fields other than schema/version (name, provenance...).
  const nlohmann::json& metadata() const { return metadata_; }

  const Entry* find(std::string_view id) const;

  // Throws ValidationError on duplicate ids or inconsistent gold vectors.
  void Validate() const;

  // Gold vectors in corpus order. Throws ValidationError if any is missing.
  std::vector<LabelVector> GoldLabels() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Entry> entries_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

enum class Format { kJsonl, kCsv };
std::optional<Format> FormatFromPath(std::string_view path);
std::optional<Format> ParseFormat(std::string_view name);

struct LoadOptions {
  // Lenient loading drops (quarantines) bad rows instead of failing.
  bool lenient = false;
  // Prediction files may omit text. Entries then carry an empty text.
  bool require_text = true;
};

struct RowIssue {
  std::size_t line = 0;
  std::string id;  // empty when unknown
  std::string message;

  nlohmann::ordered_json to_json() const;
};

class CorpusError : public ValidationError {
 public:
  CorpusError(std::string source, std::vector<RowIssue> issues);
  const std::string& source() const { return source_; }
  const std::vector<RowIssue>& issues() const { return issues_; }

 private:
  std::string source_;
  std::vector<RowIssue> issues_;
};

struct LoadResult {
  Corpus corpus;
  // Rows dropped in lenient mode, with the reason.
  std::vector<RowIssue> quarantined;
};

// Throws CorpusError (strict mode, or an unusable header) and
// ValidationError for unreadable files.
LoadResult ParseJsonl(std::string_view text, const std::string& source, LoadOptions options = {});
// CSV with a header row naming at least `id` and `text`; optional `source`.
LoadResult ParseCsv(std::string_view text, const std::string& source, LoadOptions options = {});
LoadResult LoadCorpus(const std::string& path, std::optional<Format> format = std::nullopt,
                      LoadOptions options = {});

// Canonical JSONL: header line, then one row per entry.
std::string ToJsonl(const Corpus& corpus);
void SaveCorpus(const Corpus& corpus, const std::string& path);

nlohmann::ordered_json EntryToJson(const Entry& entry);

}  // namespace haf::corpus

#endif  // HAF_CORPUS_CORPUS_H_
