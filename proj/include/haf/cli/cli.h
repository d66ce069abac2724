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


#ifndef HAF_CLI_CLI_H_
#define HAF_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace haf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitProvider = 3;

// Entry point of the `haf` tool. args[0] is the program name. Errors are
// written to `err` as one JSON object per line.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace haf::cli

#endif  // HAF_CLI_CLI_H_
