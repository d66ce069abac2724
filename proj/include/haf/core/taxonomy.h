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

#ifndef HAF_CORE_TAXONOMY_H_
#define HAF_CORE_TAXONOMY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

namespace haf {

// The four general aspect categories, in canonical order.
enum class General : std::uint8_t { kProduct = 0, kDelivery = 1, kPrice = 2, kService = 3 };

inline constexpr int kNumGenerals = 4;
inline constexpr int kNumSpecifics = 21;
inline constexpr int kNumLabels = kNumGenerals + kNumSpecifics;

// Bumped whenever a label is added, removed, renamed or reordered.
inline constexpr int kTaxonomyVersion = 1;

// Flat label index: generals occupy [0, 4), specifics [4, 25).
using LabelIndex = int;

constexpr LabelIndex GeneralLabel(General g) { return static_cast<int>(g); }
constexpr LabelIndex SpecificLabel(int specific) { return kNumGenerals + specific; }
constexpr bool IsGeneralLabel(LabelIndex label) { return label >= 0 && label < kNumGenerals; }
constexpr bool IsSpecificLabel(LabelIndex label) {
  return label >= kNumGenerals && label < kNumLabels;
}
constexpr int SpecificOf(LabelIndex label) { return label - kNumGenerals; }

struct GeneralInfo {
  General id;
  std::string_view slug;     // "PRODUCT"
  std::string_view display;  // "Product"
};

struct SpecificInfo {
  General parent;
  std::string_view name;     // "Size/Measurement"
  std::string_view slug;     // "PRODUCT.Size_Measurement"
};

// The fixed Hierarchical Aspect Framework. All members are static: the
// taxonomy is compiled-in data, not something that can be configured.
class Taxonomy {
 public:
  static std::span<const GeneralInfo, kNumGenerals> generals();
  static std::span<const SpecificInfo, kNumSpecifics> specifics();

  // Parent general of a specific aspect. Throws std::out_of_range.
  static General parent_of(int specific);

  // Half-open range of specific indices belonging to `g`.
  static std::pair<int, int> children_of(General g);

  // Slug for a flat label index. Throws std::out_of_range.
  static std::string_view slug(LabelIndex label);
  static std::string display_name(LabelIndex label);

  // Case-insensitive slug lookup.
  static std::optional<LabelIndex> find(std::string_view slug);
  static std::optional<General> find_general(std::string_view slug);

  // Versioned export consumed by the UI and config tooling.
  static nlohmann::ordered_json to_json();
};

std::string_view to_string(General g);

}  // namespace haf

#endif  // HAF_CORE_TAXONOMY_H_
