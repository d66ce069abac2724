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

#include "haf/core/taxonomy.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace haf {
namespace {

constexpr std::array<GeneralInfo, kNumGenerals> kGenerals = {{
    {General::kProduct, "PRODUCT", "Product"},
    {General::kDelivery, "DELIVERY", "Delivery"},
    {General::kPrice, "PRICE", "Price"},
    {General::kService, "SERVICE", "Service"},
}};

// Table order. Specifics of one general are contiguous.
constexpr std::array<SpecificInfo, kNumSpecifics> kSpecifics = {{
    {General::kProduct, "Color", "PRODUCT.Color"},
    {General::kProduct, "Condition", "PRODUCT.Condition"},
    {General::kProduct, "Correctness", "PRODUCT.Correctness"},
    {General::kProduct, "Durability", "PRODUCT.Durability"},
    {General::kProduct, "Effectiveness", "PRODUCT.Effectiveness"},
    {General::kProduct, "Functionality", "PRODUCT.Functionality"},
    {General::kProduct, "Material", "PRODUCT.Material"},
    {General::kProduct, "Sensory", "PRODUCT.Sensory"},
    {General::kProduct, "Size/Measurement", "PRODUCT.Size_Measurement"},
    {General::kProduct, "General", "PRODUCT.General"},
    {General::kDelivery, "Condition", "DELIVERY.Condition"},
    {General::kDelivery, "Correctness", "DELIVERY.Correctness"},
    {General::kDelivery, "Timeliness", "DELIVERY.Timeliness"},
    {General::kDelivery, "General", "DELIVERY.General"},
    {General::kPrice, "Affordability", "PRICE.Affordability"},
    {General::kPrice, "Value for Money", "PRICE.Value_for_Money"},
    {General::kPrice, "General", "PRICE.General"},
    {General::kService, "Handling", "SERVICE.Handling"},
    {General::kService, "Responsiveness", "SERVICE.Responsiveness"},
    {General::kService, "Trustworthiness", "SERVICE.Trustworthiness"},
    {General::kService, "General", "SERVICE.General"},
}};

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::span<const GeneralInfo, kNumGenerals> Taxonomy::generals() { return kGenerals; }

std::span<const SpecificInfo, kNumSpecifics> Taxonomy::specifics() { return kSpecifics; }

General Taxonomy::parent_of(int specific) {
  if (specific < 0 || specific >= kNumSpecifics) {
    throw std::out_of_range("specific aspect index out of range: " + std::to_string(specific));
  }
  return kSpecifics[specific].parent;
}

std::pair<int, int> Taxonomy::children_of(General g) {
  int begin = -1;
  int end = -1;
  for (int i = 0; i < kNumSpecifics; ++i) {
    if (kSpecifics[i].parent != g) continue;
    if (begin < 0) begin = i;
    end = i + 1;
  }
  return {begin, end};
}

std::string_view Taxonomy::slug(LabelIndex label) {
  if (IsGeneralLabel(label)) return kGenerals[label].slug;
  if (IsSpecificLabel(label)) return kSpecifics[SpecificOf(label)].slug;
  throw std::out_of_range("label index out of range: " + std::to_string(label));
}

std::string Taxonomy::display_name(LabelIndex label) {
  if (IsGeneralLabel(label)) return std::string(kGenerals[label].display);
  const SpecificInfo& s = kSpecifics.at(SpecificOf(label));
  return std::string(kGenerals[static_cast<int>(s.parent)].display) + "-" + std::string(s.name);
}

std::optional<LabelIndex> Taxonomy::find(std::string_view slug) {
  for (LabelIndex i = 0; i < kNumLabels; ++i) {
    if (EqualsIgnoreCase(Taxonomy::slug(i), slug)) return i;
  }
  return std::nullopt;
}

std::optional<General> Taxonomy::find_general(std::string_view slug) {
  for (const GeneralInfo& g : kGenerals) {
    if (EqualsIgnoreCase(g.slug, slug)) return g.id;
  }
  return std::nullopt;
}

nlohmann::ordered_json Taxonomy::to_json() {
  nlohmann::ordered_json doc;
  doc["schema"] = "haf.taxonomy";
  doc["version"] = kTaxonomyVersion;
  auto generals = nlohmann::ordered_json::array();
  for (const GeneralInfo& g : kGenerals) {
    nlohmann::ordered_json entry;
    entry["slug"] = g.slug;
    entry["display"] = g.display;
    entry["index"] = GeneralLabel(g.id);
    auto children = nlohmann::ordered_json::array();
    auto [begin, end] = children_of(g.id);
    for (int s = begin; s < end; ++s) children.push_back(kSpecifics[s].slug);
    entry["specifics"] = std::move(children);
    generals.push_back(std::move(entry));
  }
  auto specifics = nlohmann::ordered_json::array();
  for (int s = 0; s < kNumSpecifics; ++s) {
    nlohmann::ordered_json entry;
    entry["slug"] = kSpecifics[s].slug;
    entry["display"] = kSpecifics[s].name;
    entry["parent"] = kGenerals[static_cast<int>(kSpecifics[s].parent)].slug;
    entry["index"] = SpecificLabel(s);
    specifics.push_back(std::move(entry));
  }
  auto order = nlohmann::ordered_json::array();
  for (LabelIndex i = 0; i < kNumLabels; ++i) order.push_back(slug(i));
  doc["generals"] = std::move(generals);
  doc["specifics"] = std::move(specifics);
  doc["label_order"] = std::move(order);
  return doc;
}

std::string_view to_string(General g) { return kGenerals[static_cast<int>(g)].slug; }

}  // namespace haf
