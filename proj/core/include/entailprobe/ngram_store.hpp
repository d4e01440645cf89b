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

// Yearly relative n-gram frequencies.
//
// Input dump rows (TSV, no header, '#' comments allowed):
//   phrase  year  match_count  [volume_count]
// Totals rows:
//   year  total_count
// Phrases are case-folded and whitespace-normalized on ingestion; counts of
// variants that fold to the same phrase are summed before dividing by the
// year's total.
//
// Binary index layout (all integers little-endian):
//   "NGIX1"                      5 bytes magic
//   u32 version (= 1)
//   u32 len, bytes               source name
//   i32 first_year, i32 last_year
//   u64 phrase_count
//   per phrase, ascending byte order:
//     u32 len, bytes             phrase
//     u32 year_count
//     per year, ascending: i32 year, f64 relative_frequency (IEEE-754 bits)

#ifndef ENTAILPROBE_NGRAM_STORE_HPP_
#define ENTAILPROBE_NGRAM_STORE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace entailprobe {

struct YearRange {
  int first = 1950;
  int last = 2019;
  int length() const { return last - first + 1; }
  friend bool operator==(const YearRange&, const YearRange&) = default;
};

struct IngestStats {
  size_t rows_read = 0;
  size_t rows_skipped = 0;  // malformed rows or years without a total
};

class NgramStore {
 public:
  using Series = std::map<int, double>;

  NgramStore(std::string source, YearRange span);

  // Throws DataError if the totals file is missing or malformed.
  static NgramStore ingest(const std::filesystem::path& dump,
                           const std::filesystem::path& totals,
                           IngestStats* stats = nullptr);

  // Throws DataError on a bad magic, version or truncated file.
  static NgramStore load(const std::filesystem::path& index);
  static NgramStore deserialize(std::string_view bytes);

  std::string serialize() const;
  void save(const std::filesystem::path& index) const;

  // Frequencies must be non-negative and the year inside the span.
  void set(std::string_view phrase, int year, double relative_frequency);

  // nullptr when the phrase never occurs.
  const Series* find(std::string_view phrase) const;
  bool contains(std::string_view phrase) const { return find(phrase); }

  // Copy with every frequency multiplied by `factor` (> 0).
  NgramStore scaled(double factor) const;

  const std::string& source() const { return source_; }
  YearRange span() const { return span_; }
  size_t phrase_count() const { return phrases_.size(); }
  const std::map<std::string, Series, std::less<>>& phrases() const {
    return phrases_;
  }

 private:
  std::string source_;
  YearRange span_;
  std::map<std::string, Series, std::less<>> phrases_;
};

// Case-fold and collapse whitespace runs to single spaces.
std::string normalize_phrase(std::string_view phrase);

// Mean relative frequency over [years.first, years.last]; years without data
// count as 0 and an absent phrase yields 0. Throws ConfigError when the range
// is empty or outside the store span, DataError for an empty phrase.
double avg_frequency(const NgramStore& store, std::string_view phrase,
                     YearRange years = {});

}  // namespace entailprobe

#endif  // ENTAILPROBE_NGRAM_STORE_HPP_
