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

#include "entailprobe/entity_index.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {

bool entity_rank_less(const EntityIndexRecord& a, const EntityIndexRecord& b) {
  if (a.mention_count != b.mention_count) {
    return a.mention_count > b.mention_count;
  }
  return a.surface < b.surface;
}

std::string_view to_string(FrequencyBand b) {
  return b == FrequencyBand::kLow5Pct ? "low5pct" : "high5pct";
}

size_t band_size(size_t n) { return (n + 19) / 20; }

EntityIndex::EntityIndex(std::vector<EntityIndexRecord> records) {
  std::set<std::pair<std::string, std::string>> seen;
  for (auto& r : records) {
    if (!seen.emplace(r.surface, r.etype).second) {
      throw DataError(fmt::format("duplicate entity ({}, {}) in index",
                                  r.surface, r.etype));
    }
    by_type_[r.etype].push_back(std::move(r));
    ++total_;
  }
  for (auto& [_, recs] : by_type_) {
    std::sort(recs.begin(), recs.end(), entity_rank_less);
  }
}

EntityIndex EntityIndex::load(const std::filesystem::path& path,
                              const EntityTypeSet& types) {
  const auto lines = tsv::read_lines(path);
  std::vector<EntityIndexRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  size_t unknown = 0;
  bool saw_format = false;
  bool saw_columns = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const size_t lineno = i + 1;
    if (tsv::trim(line).empty()) continue;
    if (!saw_format) {
      if (line != tsv::kFormatLine) {
        throw DataError(fmt::format("{}:{}: expected header '{}'",
                                    path.string(), lineno, tsv::kFormatLine));
      }
      saw_format = true;
      continue;
    }
    if (line.front() == '#') continue;
    const auto f = tsv::split(line);
    if (!saw_columns) {
      if (f != std::vector<std::string>{"surface", "etype", "mention_count"}) {
        throw DataError(fmt::format("{}:{}: unexpected column header",
                                    path.string(), lineno));
      }
      saw_columns = true;
      continue;
    }
    if (f.size() != 3) {
      throw DataError(fmt::format("{}:{}: expected 3 fields, got {}",
                                  path.string(), lineno, f.size()));
    }
    if (tsv::trim(f[0]).empty()) {
      throw DataError(
          fmt::format("{}:{}: field 'surface': empty", path.string(), lineno));
    }
    int64_t count = 0;
    const auto& c = f[2];
    const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
    if (ec != std::errc() || ptr != c.data() + c.size()) {
      throw DataError(fmt::format("{}:{}: field 'mention_count': not an integer",
                                  path.string(), lineno));
    }
    if (count < 0) {
      throw DataError(fmt::format(
          "{}:{}: field 'mention_count': negative count {}", path.string(),
          lineno, count));
    }
    bool was_unknown = false;
    std::string etype = types.normalize(f[1], &was_unknown);
    if (was_unknown) ++unknown;
    if (!seen.emplace(f[0], etype).second) {
      throw DataError(fmt::format("{}:{}: duplicate entity ({}, {})",
                                  path.string(), lineno, f[0], etype));
    }
    records.push_back({f[0], std::move(etype), static_cast<uint64_t>(count)});
  }
  EntityIndex index(std::move(records));
  index.unknown_types_ = unknown;
  return index;
}

std::span<const EntityIndexRecord> EntityIndex::records(
    std::string_view etype) const {
  const auto it = by_type_.find(etype);
  if (it == by_type_.end()) return {};
  return it->second;
}

std::span<const EntityIndexRecord> EntityIndex::band(
    std::string_view etype, FrequencyBand band) const {
  const auto all = records(etype);
  const size_t k = band_size(all.size());
  if (band == FrequencyBand::kHigh5Pct) return all.first(k);
  return all.last(k);
}

std::vector<std::string> EntityIndex::types() const {
  std::vector<std::string> out;
  for (const auto& [t, _] : by_type_) out.push_back(t);
  return out;
}

}  // namespace entailprobe
