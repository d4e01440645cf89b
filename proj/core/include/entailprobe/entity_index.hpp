/*
 * Copyright 2026 The entail-probe Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Entity mention statistics used to draw replacement arguments.
//
// File format (TSV):
//   #format=entailprobe-v1
//   surface  etype  mention_count

#ifndef ENTAILPROBE_ENTITY_INDEX_HPP_
#define ENTAILPROBE_ENTITY_INDEX_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entailprobe/entity_types.hpp"

namespace entailprobe {

struct EntityIndexRecord {
  std::string surface;
  std::string etype;
  uint64_t mention_count = 0;

  friend bool operator==(const EntityIndexRecord&,
                         const EntityIndexRecord&) = default;
};

// Total order used within each type: mention_count descending, then surface
// ascending.
bool entity_rank_less(const EntityIndexRecord& a, const EntityIndexRecord& b);

enum class FrequencyBand { kLow5Pct, kHigh5Pct };

std::string_view to_string(FrequencyBand b);  // "low5pct" / "high5pct"

// Number of records in a 5% band of a type with n distinct records:
// ceil(0.05 * n).
size_t band_size(size_t n);

class EntityIndex {
 public:
  EntityIndex() = default;
  // Throws DataError on a duplicate (surface, etype).
  explicit EntityIndex(std::vector<EntityIndexRecord> records);

  // Unknown type names map to "thing" and are counted. Negative or
  // non-numeric counts and duplicates throw DataError naming the line.
  static EntityIndex load(const std::filesystem::path& path,
                          const EntityTypeSet& types = EntityTypeSet::builtin());

  // Records of one type in rank order; empty span for an absent type.
  std::span<const EntityIndexRecord> records(std::string_view etype) const;

  // Most frequent ceil(5%) records (kHigh5Pct) or least frequent (kLow5Pct),
  // both in rank order.
  std::span<const EntityIndexRecord> band(std::string_view etype,
                                          FrequencyBand band) const;

  std::vector<std::string> types() const;
  size_t size() const { return total_; }
  size_t unknown_type_count() const { return unknown_types_; }

 private:
  std::map<std::string, std::vector<EntityIndexRecord>, std::less<>> by_type_;
  size_t total_ = 0;
  size_t unknown_types_ = 0;
};

}  // namespace entailprobe

#endif  // ENTAILPROBE_ENTITY_INDEX_HPP_
