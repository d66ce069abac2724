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

#ifndef HAF_CORE_LABEL_VECTOR_H_
#define HAF_CORE_LABEL_VECTOR_H_

#include <bitset>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "haf/core/taxonomy.h"
#include "json.hpp"

namespace haf {

// Multi-label assignment over the 25 taxonomy labels for one review.
//
// A default-constructed vector is all-false. Vectors built through the raw
// constructors may violate the hierarchy (a specific set while its parent
// general is clear); Strict() rejects such vectors, and is_consistent() lets
// callers check raw ones.
class LabelVector {
 public:
  using Bits = std::bitset<kNumLabels>;

  LabelVector() = default;
  explicit LabelVector(Bits bits) : bits_(bits) {}

  // Raw vector from a set of slugs. Throws LabelError on unknown slugs.
  static LabelVector FromSlugs(std::initializer_list<std::string_view> slugs);
  static LabelVector FromSlugs(const std::vector<std::string>& slugs);

  // Throws HierarchyError when `v` is inconsistent.
  static LabelVector Strict(const LabelVector& v);

  bool test(LabelIndex label) const { return bits_.test(label); }
  bool general(General g) const { return bits_.test(GeneralLabel(g)); }
  bool specific(int s) const { return bits_.test(SpecificLabel(s)); }

  LabelVector& set(LabelIndex label, bool value = true) {
    bits_.set(label, value);
    return *this;
  }
  // Sets a specific aspect together with its parent general.
  LabelVector& set_specific_with_parent(int specific);

  bool is_consistent() const;
  // Specifics set under a clear parent.
  int inconsistent_count() const;
  int count() const { return static_cast<int>(bits_.count()); }
  bool none() const { return bits_.none(); }

  const Bits& bits() const { return bits_; }

  std::vector<std::string> slugs() const;

  // Keyed object, all 25 labels in canonical order. This is the canonical
  // wire form; dump() of it is byte-stable.
  nlohmann::ordered_json to_json() const;

  // Accepts an object keyed by slugs (case-insensitive). Missing keys are
  // false. Throws LabelError on unknown keys or non-boolean values. The
  // result is raw: no hierarchy check.
  static LabelVector FromJson(const nlohmann::json& object);

  friend bool operator==(const LabelVector&, const LabelVector&) = default;

 private:
  Bits bits_;
};

// Clears every specific whose parent general is false. Generals are
// untouched, and no bit ever goes from false to true.
LabelVector EnforceHierarchy(const LabelVector& v);

std::string to_string(const LabelVector& v);

}  // namespace haf

#endif  // HAF_CORE_LABEL_VECTOR_H_
