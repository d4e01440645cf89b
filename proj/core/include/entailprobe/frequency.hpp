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

// Relative-frequency heuristic over lemmatized predicates.
//
//   Win   hypothesis_freq >= 5 * premise_freq  and hypothesis_freq > 0
//   Lose  premise_freq >= 5 * hypothesis_freq  and premise_freq > 0
//   Draw  otherwise (including both zero)

#ifndef ENTAILPROBE_FREQUENCY_HPP_
#define ENTAILPROBE_FREQUENCY_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entailprobe/dataset.hpp"
#include "entailprobe/lemmatizer.hpp"
#include "entailprobe/ngram_store.hpp"

namespace entailprobe {

inline constexpr double kFrequencyMargin = 5.0;

enum class FrequencyClass { kWin, kLose, kDraw };

std::string_view to_string(FrequencyClass f);  // "Win" / "Lose" / "Draw"
std::optional<FrequencyClass> parse_frequency_class(std::string_view s);

// Which lookup produced a measured frequency.
enum class LookupPath { kPhrase, kHeadVerb, kAbsent };
std::string_view to_string(LookupPath p);  // "phrase" / "head_verb" / "absent"
std::optional<LookupPath> parse_lookup_path(std::string_view s);

struct FrequencyVerdict {
  FrequencyClass f = FrequencyClass::kDraw;
  // hypothesis_freq / premise_freq; +inf when only the hypothesis occurs,
  // 0 when only the premise occurs, 1 when neither occurs.
  double ratio = 1.0;
  double premise_freq = 0.0;
  double hypothesis_freq = 0.0;
  std::string premise_phrase;
  std::string hypothesis_phrase;
  LookupPath premise_path = LookupPath::kAbsent;
  LookupPath hypothesis_path = LookupPath::kAbsent;
};

// The pure margin rule on two measured frequencies (both >= 0).
FrequencyVerdict classify_frequencies(double premise_freq,
                                      double hypothesis_freq);

struct FrequencyOptions {
  YearRange years{};
  // Query the head verb when the full phrase is absent from the store.
  bool head_verb_fallback = true;
};

FrequencyVerdict classify_frequency(
    const Proposition& premise, const Proposition& hypothesis,
    const NgramStore& store, const FrequencyOptions& options = {},
    const Lemmatizer& lemmatizer = Lemmatizer::builtin());

// One classified sample, as written by `freq classify`.
struct FrequencyRecord {
  std::string sample_id;
  FrequencyVerdict verdict;
};

// TSV: #format line, header
//   sample_id prem_freq hyp_freq ratio verdict prem_lookup hyp_lookup
// Frequencies use the shortest round-trip decimal form.
std::string serialize_frequency_records(
    const std::vector<FrequencyRecord>& records);
std::map<std::string, FrequencyVerdict> load_frequency_records(
    const std::filesystem::path& path);

}  // namespace entailprobe

#endif  // ENTAILPROBE_FREQUENCY_HPP_
