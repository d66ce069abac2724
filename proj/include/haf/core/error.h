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

#ifndef HAF_CORE_ERROR_H_
#define HAF_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace haf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: config files, corpora, label payloads. The CLI maps this
// to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class LabelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A specific aspect is set while its parent general is not.
class HierarchyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace haf

#endif  // HAF_CORE_ERROR_H_
