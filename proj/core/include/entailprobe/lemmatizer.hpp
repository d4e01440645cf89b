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

// Rule-based predicate lemmatizer.
//
// Rule table, applied to a predicate template or phrase:
//
//  1. Split on whitespace, lowercase ASCII, strip leading/trailing
//     punctuation  . , ; : ! ? " ' ( ) [ ]
//  2. Drop tokens containing an argument placeholder ({X}, {Y}).
//  3. Drop determiners and possessives: a an the this that these those
//     some any his her its their our my your.
//  4. A token is in verb position when it is the first remaining token or
//     the previous remaining token is an auxiliary (forms of be/have/do,
//     modals, "not", "to").
//  5. Verb-position tokens are looked up in the exceptions table
//     (data/lemma_exceptions.tsv: irregular forms and protected words);
//     otherwise the first matching suffix rule applies:
//       -ies -> -y (len > 4)        -ied -> -y (len > 4)
//       -sses/-ches/-shes/-xes/-zes -> drop "es"
//       -ss, -us, -is, -as          -> unchanged
//       -s                          -> drop (len > 3)
//       -eed                        -> -ee when the part before "eed" has
//                                      a vowel, else unchanged
//       -ed (len > 4), -ing (len > 5), stem containing a vowel -> stem, then:
//         stem ends at/bl/iz/v/c/us or consonant+z, or rg/dg, or n/r/p/l+s
//                                   -> add "e"
//         stem ends in a double consonant other than l/s/z -> undouble
//         stem has Porter measure 1 and ends consonant-vowel-consonant
//         (last letter not w/x/y)   -> add "e"
//  6. Other tokens are kept as is. The result is the tokens joined by a
//     single space.
//
// The head verb of a phrase is its first verb-position token that is not an
// auxiliary, or the first token when there is none.

#ifndef ENTAILPROBE_LEMMATIZER_HPP_
#define ENTAILPROBE_LEMMATIZER_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entailprobe/dataset.hpp"

namespace entailprobe {

struct LemmaAnalysis {
  std::string phrase;
  std::string head_verb;
};

class Lemmatizer {
 public:
  // Built-in exceptions table (same content as data/lemma_exceptions.tsv).
  static const Lemmatizer& builtin();
  // TSV rows "form<TAB>lemma"; '#' comments allowed.
  static Lemmatizer load(const std::filesystem::path& path);

  explicit Lemmatizer(std::unordered_map<std::string, std::string> exceptions);

  // Throws DataError("empty predicate") if no token survives.
  LemmaAnalysis analyze(std::string_view text) const;
  std::string lemmatize_phrase(std::string_view text) const {
    return analyze(text).phrase;
  }
  // Lemma of a single verb-position word.
  std::string lemmatize_word(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

// Lemmatized predicate of a proposition. Uses the predicate hint when the
// proposition carries one, otherwise the template.
std::string lemmatize_predicate(const Proposition& p,
                                const Lemmatizer& lemmatizer =
                                    Lemmatizer::builtin());

LemmaAnalysis analyze_predicate(const Proposition& p,
                                const Lemmatizer& lemmatizer =
                                    Lemmatizer::builtin());

}  // namespace entailprobe

#endif  // ENTAILPROBE_LEMMATIZER_HPP_
