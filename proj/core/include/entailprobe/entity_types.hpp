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

#ifndef ENTAILPROBE_ENTITY_TYPES_HPP_
#define ENTAILPROBE_ENTITY_TYPES_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace entailprobe {

// Closed inventory of coarse entity type names. The fallback "thing" is
// always a member.
class EntityTypeSet {
 public:
  static constexpr std::string_view kFallback = "thing";

  // 48 content types plus "thing"; mirrors data/entity_types.txt.
  static const EntityTypeSet& builtin();

  // One name per line; blank lines and '#' comments ignored.
  static EntityTypeSet load(const std::filesystem::path& path);

  explicit EntityTypeSet(std::vector<std::string> names);

  bool contains(std::string_view name) const;

  // Returns `name` if it is a member, otherwise the fallback. Sets
  // *was_unknown when a fallback happened.
  std::string normalize(std::string_view name,
                        bool* was_unknown = nullptr) const;

  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_set<std::string> lookup_;
};

// Lowercase ASCII letters, digits and '_', starting with a letter.
bool is_valid_type_name(std::string_view name);

}  // namespace entailprobe

#endif  // ENTAILPROBE_ENTITY_TYPES_HPP_
