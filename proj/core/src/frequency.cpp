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

#include "entailprobe/frequency.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

// a >= margin * b, evaluated without rounding the product.
bool at_least_margin_times(double a, double b) {
  return std::fma(kFrequencyMargin, b, -a) <= 0.0;
}

struct Measured {
  double freq = 0.0;
  std::string phrase;
  LookupPath path = LookupPath::kAbsent;
};

Measured measure(const Proposition& p, const NgramStore& store,
                 const FrequencyOptions& options, const Lemmatizer& lemmatizer) {
  const auto lemma = analyze_predicate(p, lemmatizer);
  if (store.contains(lemma.phrase)) {
    return {avg_frequency(store, lemma.phrase, options.years), lemma.phrase,
            LookupPath::kPhrase};
  }
  if (options.head_verb_fallback && store.contains(lemma.head_verb)) {
    return {avg_frequency(store, lemma.head_verb, options.years),
            lemma.head_verb, LookupPath::kHeadVerb};
  }
  // Still validates the year range against the store.
  avg_frequency(store, lemma.phrase, options.years);
  return {0.0, lemma.phrase, LookupPath::kAbsent};
}

std::string format_freq(double v) {
  if (std::isinf(v)) return "inf";
  return fmt::format("{}", v);
}

}  // namespace

std::string_view to_string(FrequencyClass f) {
  switch (f) {
    case FrequencyClass::kWin: return "Win";
    case FrequencyClass::kLose: return "Lose";
    case FrequencyClass::kDraw: return "Draw";
  }
  return "?";
}

std::optional<FrequencyClass> parse_frequency_class(std::string_view s) {
  if (s == "Win") return FrequencyClass::kWin;
  if (s == "Lose") return FrequencyClass::kLose;
  if (s == "Draw") return FrequencyClass::kDraw;
  return std::nullopt;
}

std::string_view to_string(LookupPath p) {
  switch (p) {
    case LookupPath::kPhrase: return "phrase";
    case LookupPath::kHeadVerb: return "head_verb";
    case LookupPath::kAbsent: return "absent";
  }
  return "?";
}

std::optional<LookupPath> parse_lookup_path(std::string_view s) {
  if (s == "phrase") return LookupPath::kPhrase;
  if (s == "head_verb") return LookupPath::kHeadVerb;
  if (s == "absent") return LookupPath::kAbsent;
  return std::nullopt;
}

FrequencyVerdict classify_frequencies(double premise_freq,
                                      double hypothesis_freq) {
  FrequencyVerdict v;
  v.premise_freq = premise_freq;
  v.hypothesis_freq = hypothesis_freq;
  if (premise_freq > 0.0) {
    v.ratio = hypothesis_freq / premise_freq;
  } else {
    v.ratio = hypothesis_freq > 0.0 ? std::numeric_limits<double>::infinity()
                                    : 1.0;
  }
  if (hypothesis_freq > 0.0 &&
      at_least_margin_times(hypothesis_freq, premise_freq)) {
    v.f = FrequencyClass::kWin;
  } else if (premise_freq > 0.0 &&
             at_least_margin_times(premise_freq, hypothesis_freq)) {
    v.f = FrequencyClass::kLose;
  } else {
    v.f = FrequencyClass::kDraw;
  }
  return v;
}

FrequencyVerdict classify_frequency(const Proposition& premise,
                                    const Proposition& hypothesis,
                                    const NgramStore& store,
                                    const FrequencyOptions& options,
                                    const Lemmatizer& lemmatizer) {
  const auto p = measure(premise, store, options, lemmatizer);
  const auto h = measure(hypothesis, store, options, lemmatizer);
  auto v = classify_frequencies(p.freq, h.freq);
  v.premise_phrase = p.phrase;
  v.hypothesis_phrase = h.phrase;
  v.premise_path = p.path;
  v.hypothesis_path = h.path;
  return v;
}

std::string serialize_frequency_records(
    const std::vector<FrequencyRecord>& records) {
  std::string out;
  out.append(tsv::kFormatLine).push_back('\n');
  out.append(
      "sample_id\tprem_freq\thyp_freq\tratio\tverdict\tprem_lookup\t"
      "hyp_lookup\n");
  for (const auto& r : records) {
    const auto& v = r.verdict;
    out.append(fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.sample_id,
                           format_freq(v.premise_freq),
                           format_freq(v.hypothesis_freq), format_freq(v.ratio),
                           to_string(v.f), to_string(v.premise_path),
                           to_string(v.hypothesis_path)));
  }
  return out;
}

std::map<std::string, FrequencyVerdict> load_frequency_records(
    const std::filesystem::path& path) {
  std::map<std::string, FrequencyVerdict> out;
  const auto lines = tsv::read_lines(path);
  bool header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (tsv::trim(line).empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto f = tsv::split(line);
    auto bad = [&](std::string_view what) {
      return DataError(
          fmt::format("{}:{}: {}", path.string(), i + 1, what));
    };
    if (f.size() != 7) throw bad("expected 7 fields");
    FrequencyVerdict v;
    char* end = nullptr;
    v.premise_freq = std::strtod(f[1].c_str(), &end);
    if (*end) throw bad("bad prem_freq");
    v.hypothesis_freq = std::strtod(f[2].c_str(), &end);
    if (*end) throw bad("bad hyp_freq");
    v.ratio = std::strtod(f[3].c_str(), &end);
    if (*end) throw bad("bad ratio");
    const auto cls = parse_frequency_class(f[4]);
    const auto pp = parse_lookup_path(f[5]);
    const auto hp = parse_lookup_path(f[6]);
    if (!cls || !pp || !hp) throw bad("bad verdict or lookup path");
    v.f = *cls;
    v.premise_path = *pp;
    v.hypothesis_path = *hp;
    out[f[0]] = v;
  }
  return out;
}

}  // namespace entailprobe
