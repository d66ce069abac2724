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


#ifndef HAF_CORPUS_JSONL_LOG_H_
#define HAF_CORPUS_JSONL_LOG_H_

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace haf::corpus {

// Appends one compact JSON line and flushes. Throws ValidationError when the
// file cannot be written.
void AppendJsonLine(const std::string& path, const nlohmann::ordered_json& value);

struct JsonLine {
  std::size_t line = 0;
  nlohmann::json value;
};

// Reads every non-blank line. A final line without a newline that does not
// parse (a torn append) is ignored; any other bad line throws
// ValidationError naming the line. A missing file reads as empty.
std::vector<JsonLine> ReadJsonLines(const std::string& path);

}  // namespace haf::corpus

#endif  // HAF_CORPUS_JSONL_LOG_H_
