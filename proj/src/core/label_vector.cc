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

#include "haf/core/label_vector.h"

#include "haf/core/error.h"

namespace haf {
namespace {

template <typename Range>
LabelVector FromSlugRange(const Range& slugs) {
  LabelVector v;
  for (const auto& slug : slugs) {
    auto label = Taxonomy::find(slug);
    if (!label) throw LabelError("unknown label '" + std::string(slug) + "'");
    v.set(*label);
  }
  return v;
}

}  // namespace

LabelVector LabelVector::FromSlugs(std::initializer_list<std::string_view> slugs) {
  return FromSlugRange(slugs);
}

LabelVector LabelVector::FromSlugs(const std::vector<std::string>& slugs) {
  return FromSlugRange(slugs);
}

LabelVector LabelVector::Strict(const LabelVector& v) {
  for (int s = 0; s < kNumSpecifics; ++s) {
    if (v.specific(s) && !v.general(Taxonomy::parent_of(s))) {
      throw HierarchyError(std::string(Taxonomy::slug(SpecificLabel(s))) + " is set but " +
                           std::string(to_string(Taxonomy::parent_of(s))) + " is not");
    }
  }
  return v;
}

LabelVector& LabelVector::set_specific_with_parent(int specific) {
  bits_.set(GeneralLabel(Taxonomy::parent_of(specific)));
  bits_.set(SpecificLabel(specific));
  return *this;
}

bool LabelVector::is_consistent() const { return inconsistent_count() == 0; }

int LabelVector::inconsistent_count() const {
  int n = 0;
  for (int s = 0; s < kNumSpecifics; ++s) {
    if (specific(s) && !general(Taxonomy::parent_of(s))) ++n;
  }
  return n;
}

std::vector<std::string> LabelVector::slugs() const {
  std::vector<std::string> out;
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    if (test(i)) out.emplace_back(Taxonomy::slug(i));
  }
  return out;
}

nlohmann::ordered_json LabelVector::to_json() const {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (LabelIndex i = 0; i < kNumLabels; ++i) obj[std::string(Taxonomy::slug(i))] = test(i);
  return obj;
}

LabelVector LabelVector::FromJson(const nlohmann::json& object) {
  if (!object.is_object()) throw LabelError("label payload is not a JSON object");
  LabelVector v;
  for (const auto& [key, value] : object.items()) {
    auto label = Taxonomy::find(key);
    if (!label) throw LabelError("unknown label '" + key + "'");
    if (!value.is_boolean()) throw LabelError("non-boolean value for '" + key + "'");
    v.set(*label, value.get<bool>());
  }
  return v;
}

LabelVector EnforceHierarchy(const LabelVector& v) {
  LabelVector out = v;
  for (int s = 0; s < kNumSpecifics; ++s) {
    if (!v.general(Taxonomy::parent_of(s))) out.set(SpecificLabel(s), false);
  }
  return out;
}

std::string to_string(const LabelVector& v) {
  std::string out = "{";
  bool first = true;
  for (const std::string& slug : v.slugs()) {
    if (!first) out += ", ";
    out += slug;
    first = false;
  }
  return out + "}";
}

}  // namespace haf
