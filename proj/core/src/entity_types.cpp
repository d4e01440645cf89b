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

#include "entailprobe/entity_types.hpp"

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {

bool is_valid_type_name(std::string_view name) {
  if (name.empty() || name.front() < 'a' || name.front() > 'z') return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

const EntityTypeSet& EntityTypeSet::builtin() {
  static const EntityTypeSet kSet({
      "person",        "location",         "organization",
      "event",         "product",          "art",
      "building",      "time",             "medicine",
      "disease",       "food",             "animal",
      "award",         "body_part",        "broadcast_program",
      "chemical",      "computer",         "currency",
      "degree",        "finance",          "game",
      "geography",     "god",              "government",
      "internet",      "language",         "law",
      "living_thing",  "transit",          "military",
      "music",         "news_agency",      "newspaper",
      "park",          "people",           "play",
      "rail",          "religion",         "software",
      "title",         "train",            "transportation",
      "visual_art",    "written_work",     "education",
      "astral_body",   "biology",          "sports",
      "thing",
  });
  return kSet;
}

EntityTypeSet EntityTypeSet::load(const std::filesystem::path& path) {
  std::vector<std::string> names;
  const auto lines = tsv::read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto name = tsv::trim(lines[i]);
    if (name.empty() || name.front() == '#') continue;
    if (!is_valid_type_name(name)) {
      throw DataError(fmt::format("{}:{}: invalid entity type name '{}'",
                                  path.string(), i + 1, name));
    }
    names.emplace_back(name);
  }
  return EntityTypeSet(std::move(names));
}

EntityTypeSet::EntityTypeSet(std::vector<std::string> names) {
  for (auto& n : names) {
    if (!is_valid_type_name(n)) {
      throw DataError(fmt::format("invalid entity type name '{}'", n));
    }
    if (lookup_.insert(n).second) names_.push_back(std::move(n));
  }
  if (!lookup_.contains(std::string(kFallback))) {
    names_.emplace_back(kFallback);
    lookup_.emplace(kFallback);
  }
}

bool EntityTypeSet::contains(std::string_view name) const {
  return lookup_.contains(std::string(name));
}

std::string EntityTypeSet::normalize(std::string_view name,
                                     bool* was_unknown) const {
  const bool known = contains(name);
  if (was_unknown) *was_unknown = !known;
  return known ? std::string(name) : std::string(kFallback);
}

}  // namespace entailprobe
