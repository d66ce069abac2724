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


#include "haf/corpus/jsonl_log.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "haf/core/error.h"

namespace haf::corpus {

void AppendJsonLine(const std::string& path, const nlohmann::ordered_json& value) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw ValidationError("cannot append to '" + path + "'");
  out << value.dump() << '\n';
  out.flush();
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

std::vector<JsonLine> ReadJsonLines(const std::string& path) {
  std::vector<JsonLine> out;
  if (!std::filesystem::exists(path)) return out;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    const bool terminated = nl != std::string::npos;
    if (!terminated) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto value = nlohmann::json::parse(line, nullptr, false);
    if (value.is_discarded()) {
      if (!terminated) break;
      throw ValidationError(path + ":" + std::to_string(line_no) + ": invalid JSON");
    }
    out.push_back({line_no, std::move(value)});
  }
  return out;
}

}  // namespace haf::corpus
