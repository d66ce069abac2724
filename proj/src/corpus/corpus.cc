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


#include "haf/corpus/corpus.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace haf::corpus {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string HierarchyMessage(const LabelVector& v) {
  std::string msg = "gold labels break the hierarchy:";
  for (int s = 0; s < kNumSpecifics; ++s) {
    const General parent = Taxonomy::parent_of(s);
    if (v.specific(s) && !v.general(parent)) {
      msg += " " + std::string(Taxonomy::slug(SpecificLabel(s))) + " without " +
             std::string(to_string(parent)) + ";";
    }
  }
  msg.pop_back();
  return msg;
}

// Collects rows, applies strict/lenient policy.
class Builder {
 public:
  Builder(std::string source, LoadOptions options)
      : source_(std::move(source)), options_(options) {}

  void Add(std::size_t line, Entry entry, std::vector<std::string> problems) {
    if (!seen_.insert(entry.review.id).second) {
      problems.push_back("duplicate id '" + entry.review.id + "'");
    }
    if (problems.empty()) {
      entries_.push_back(std::move(entry));
      return;
    }
    for (auto& p : problems) issues_.push_back({line, entry.review.id, std::move(p)});
  }

  void Fail(std::size_t line, std::string id, std::string message) {
    issues_.push_back({line, std::move(id), std::move(message)});
  }

  LoadResult Finish(nlohmann::json metadata) {
    if (!options_.lenient && !issues_.empty()) throw CorpusError(source_, std::move(issues_));
    LoadResult out;
    out.corpus = Corpus(std::move(entries_), std::move(metadata));
    out.quarantined = std::move(issues_);
    return out;
  }

  const LoadOptions& options() const { return options_; }

 private:
  std::string source_;
  LoadOptions options_;
  std::vector<Entry> entries_;
  std::vector<RowIssue> issues_;
  std::set<std::string> seen_;
};

void CheckText(const Entry& entry, bool require_text, std::vector<std::string>& problems) {
  if (entry.review.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    if (require_text) problems.push_back("blank text");
  }
}

void ParseRow(const nlohmann::json& row, std::size_t line, Builder& builder) {
  if (!row.is_object()) {
    builder.Fail(line, "", "row is not an object");
    return;
  }
  Entry entry;
  std::vector<std::string> problems;
  auto id = row.find("id");
  if (id == row.end() || !id->is_string() || id->get<std::string>().empty()) {
    builder.Fail(line, "", "missing or empty string 'id'");
    return;
  }
  entry.review.id = id->get<std::string>();

  auto text = row.find("text");
  if (text != row.end() && !text->is_null()) {
    if (text->is_string()) {
      entry.review.text = text->get<std::string>();
    } else {
      problems.push_back("'text' is not a string");
    }
  }
  CheckText(entry, builder.options().require_text, problems);

  auto source = row.find("source");
  if (source != row.end() && !source->is_null()) {
    if (source->is_string()) {
      entry.review.source = source->get<std::string>();
    } else {
      problems.push_back("'source' is not a string");
    }
  }

  auto labels = row.find("labels");
  if (labels != row.end() && !labels->is_null()) {
    try {
      LabelVector v = LabelVector::FromJson(*labels);
      if (!v.is_consistent()) problems.push_back(HierarchyMessage(v));
      entry.gold = v;
    } catch (const LabelError& e) {
      problems.push_back(e.what());
    }
  }

  auto spans = row.find("spans");
  if (spans != row.end() && !spans->is_null()) {
    if (!spans->is_array()) {
      problems.push_back("'spans' is not an array");
    } else {
      entry.spans.emplace();
      for (const auto& s : *spans) {
        try {
          AspectSpan span = AspectSpan::FromJson(s);
          if (!entry.review.text.empty() && !span.IsValidFor(entry.review.text)) {
            problems.push_back("span [" + std::to_string(span.start) + ", " +
                               std::to_string(span.end) + ") does not match the text");
          }
          entry.spans->push_back(std::move(span));
        } catch (const ValidationError& e) {
          problems.push_back(e.what());
        }
      }
    }
  }
  builder.Add(line, std::move(entry), std::move(problems));
}

// One CSV record: fields plus the physical line it started on.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRecord> ReadCsv(std::string_view text, const std::string& source) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool quoted = false;
    bool done = false;
    while (!done) {
      if (i >= text.size()) {
        if (quoted) throw ValidationError(source + ":" + std::to_string(rec.line) + ": unterminated quote");
        rec.fields.push_back(std::move(field));
        break;
      }
      char c = text[i++];
      if (quoted) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      switch (c) {
        case '"':
          quoted = true;
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          break;
        case '\r':
          break;
        case '\n':
          ++line;
          rec.fields.push_back(std::move(field));
          done = true;
          break;
        default:
          field += c;
      }
    }
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

Corpus::Corpus(std::vector<Entry> entries, nlohmann::json metadata)
    : entries_(std::move(entries)), metadata_(std::move(metadata)) {}

const Entry* Corpus::find(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.review.id == id) return &e;
  }
  return nullptr;
}

void Corpus::Validate() const {
  std::set<std::string_view> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.review.id).second) {
      throw ValidationError("duplicate id '" + e.review.id + "'");
    }
    if (e.gold && !e.gold->is_consistent()) {
      throw HierarchyError(e.review.id + ": " + HierarchyMessage(*e.gold));
    }
  }
}

std::vector<LabelVector> Corpus::GoldLabels() const {
  std::vector<LabelVector> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!e.gold) throw ValidationError("review '" + e.review.id + "' has no labels");
    out.push_back(*e.gold);
  }
  return out;
}

std::optional<Format> FormatFromPath(std::string_view path) {
  auto ends = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends(".jsonl") || ends(".json")) return Format::kJsonl;
  if (ends(".csv")) return Format::kCsv;
  return std::nullopt;
}

std::optional<Format> ParseFormat(std::string_view name) {
  if (name == "jsonl") return Format::kJsonl;
  if (name == "csv") return Format::kCsv;
  return std::nullopt;
}

nlohmann::ordered_json RowIssue::to_json() const {
  nlohmann::ordered_json j;
  j["line"] = line;
  if (!id.empty()) j["id"] = id;
  j["message"] = message;
  return j;
}

CorpusError::CorpusError(std::string source, std::vector<RowIssue> issues)
    : ValidationError([&] {
        std::string msg = source + ": " + std::to_string(issues.size()) + " invalid row(s)";
        for (const auto& i : issues) {
          msg += "\n  line " + std::to_string(i.line) + ": " + i.message;
        }
        return msg;
      }()),
      source_(std::move(source)),
      issues_(std::move(issues)) {}

LoadResult ParseJsonl(std::string_view text, const std::string& source, LoadOptions options) {
  Builder builder(source, options);
  nlohmann::json metadata = nlohmann::json::object();
  bool first = true;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      builder.Fail(line_no, "", std::string("invalid JSON: ") + e.what());
      first = false;
      continue;
    }
    if (first && row.is_object() && row.contains("schema")) {
      first = false;
      if (row["schema"] != kCorpusSchema) {
        throw CorpusError(source, {{line_no, "", "unexpected schema " + row["schema"].dump()}});
      }
      if (row.value("version", 0) != kCorpusVersion) {
        throw CorpusError(source, {{line_no, "", "unsupported corpus version " +
                                                     row.value("version", nlohmann::json()).dump()}});
      }
      for (const auto& [key, value] : row.items()) {
        if (key != "schema" && key != "version") metadata[key] = value;
      }
      continue;
    }
    first = false;
    ParseRow(row, line_no, builder);
  }
  return builder.Finish(std::move(metadata));
}

LoadResult ParseCsv(std::string_view text, const std::string& source, LoadOptions options) {
  auto records = ReadCsv(text, source);
  if (records.empty()) throw CorpusError(source, {{1, "", "missing header row"}});
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i) columns[records[0].fields[i]] = i;
  // Tolerate a UTF-8 byte order mark on the first column name.
  if (!records[0].fields.empty() && records[0].fields[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    columns[records[0].fields[0].substr(3)] = 0;
  }
  if (!columns.count("id") || !columns.count("text")) {
    throw CorpusError(source, {{records[0].line, "", "header needs 'id' and 'text' columns"}});
  }
  Builder builder(source, options);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != records[0].fields.size()) {
      builder.Fail(rec.line, "", "expected " + std::to_string(records[0].fields.size()) +
                                     " fields, found " + std::to_string(rec.fields.size()));
      continue;
    }
    nlohmann::json row = nlohmann::json::object();
    row["id"] = rec.fields[columns["id"]];
    row["text"] = rec.fields[columns["text"]];
    if (columns.count("source") && !rec.fields[columns["source"]].empty()) {
      row["source"] = rec.fields[columns["source"]];
    }
    ParseRow(row, rec.line, builder);
  }
  return builder.Finish(nlohmann::json::object());
}

LoadResult LoadCorpus(const std::string& path, std::optional<Format> format, LoadOptions options) {
  if (!format) format = FormatFromPath(path);
  if (!format) throw ValidationError("unknown corpus format for '" + path + "'");
  const std::string text = ReadFile(path);
  return *format == Format::kCsv ? ParseCsv(text, path, options)
                                 : ParseJsonl(text, path, options);
}

nlohmann::ordered_json EntryToJson(const Entry& entry) {
  nlohmann::ordered_json row;
  row["id"] = entry.review.id;
  row["text"] = entry.review.text;
  if (entry.review.source) row["source"] = *entry.review.source;
  if (entry.gold) row["labels"] = entry.gold->to_json();
  if (entry.spans) {
    row["spans"] = nlohmann::ordered_json::array();
    for (const auto& s : *entry.spans) row["spans"].push_back(s.to_json());
  }
  return row;
}

std::string ToJsonl(const Corpus& corpus) {
  nlohmann::ordered_json header;
  header["schema"] = kCorpusSchema;
  header["version"] = kCorpusVersion;
  for (const auto& [key, value] : corpus.metadata().items()) header[key] = value;
  std::string out = header.dump() + "\n";
  for (const auto& e : corpus.entries()) out += EntryToJson(e).dump() + "\n";
  return out;
}

void SaveCorpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << ToJsonl(corpus);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace haf::corpus
