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

#include "entailprobe/lemmatizer.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

const std::unordered_set<std::string_view>& determiners() {
  static const std::unordered_set<std::string_view> kSet = {
      "a",    "an",   "the",  "this", "that",  "these", "those", "some",
      "any",  "his",  "her",  "its",  "their", "our",   "my",    "your"};
  return kSet;
}

const std::unordered_set<std::string_view>& auxiliaries() {
  static const std::unordered_set<std::string_view> kSet = {
      "be",     "am",    "is",    "are",   "was",   "were",  "been",
      "being",  "have",  "has",   "had",   "having", "do",   "does",
      "did",    "can",   "could", "may",   "might", "must",  "shall",
      "should", "will",  "would", "not",   "to"};
  return kSet;
}

bool is_vowel_at(std::string_view w, size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return true;
    case 'y': return i > 0 && !is_vowel_at(w, i - 1);
    default: return false;
  }
}

bool has_vowel(std::string_view w) {
  for (size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

// Porter measure: number of vowel-run -> consonant-run transitions.
int measure(std::string_view w) {
  int m = 0;
  bool prev_vowel = false;
  for (size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel_at(w, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

bool ends_cvc(std::string_view w) {
  if (w.size() < 3) return false;
  const size_t n = w.size();
  const char last = w[n - 1];
  return !is_vowel_at(w, n - 3) && is_vowel_at(w, n - 2) &&
         !is_vowel_at(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

bool is_consonant_char(char c) {
  return c >= 'a' && c <= 'z' && c != 'a' && c != 'e' && c != 'i' &&
         c != 'o' && c != 'u';
}

std::string restore_stem(std::string stem) {
  const std::string_view s = stem;
  const size_t n = s.size();
  const auto ends = [&](std::string_view suf) { return s.ends_with(suf); };
  const bool add_e =
      ends("at") || ends("bl") || ends("iz") || ends("v") || ends("c") ||
      ends("us") || ends("rg") || ends("dg") ||
      (n >= 2 && s[n - 1] == 'z' && is_consonant_char(s[n - 2]) &&
       s[n - 2] != 'z') ||
      (n >= 2 && s[n - 1] == 's' &&
       (s[n - 2] == 'n' || s[n - 2] == 'r' || s[n - 2] == 'p' ||
        s[n - 2] == 'l'));
  if (add_e) return stem + "e";
  if (n >= 2 && s[n - 1] == s[n - 2] && is_consonant_char(s[n - 1]) &&
      s[n - 1] != 'l' && s[n - 1] != 's' && s[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (measure(s) == 1 && ends_cvc(s)) return stem + "e";
  return stem;
}

std::string normalize_token(std::string_view raw) {
  static constexpr std::string_view kPunct = ".,;:!?\"'()[]";
  size_t b = 0;
  size_t e = raw.size();
  while (b < e && kPunct.find(raw[b]) != std::string_view::npos) ++b;
  while (e > b && kPunct.find(raw[e - 1]) != std::string_view::npos) --e;
  std::string out(raw.substr(b, e - b));
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

}  // namespace

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer kLemmatizer({
#include "lemma_exceptions.inc"
  });
  return kLemmatizer;
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> table;
  const auto lines = tsv::read_lines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (tsv::trim(lines[i]).empty() || lines[i].front() == '#') continue;
    const auto f = tsv::split(lines[i]);
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw DataError(fmt::format("{}:{}: expected 'form<TAB>lemma'",
                                  path.string(), i + 1));
    }
    table[f[0]] = f[1];
  }
  return Lemmatizer(std::move(table));
}

Lemmatizer::Lemmatizer(std::unordered_map<std::string, std::string> exceptions)
    : exceptions_(std::move(exceptions)) {}

std::string Lemmatizer::lemmatize_word(std::string_view word) const {
  std::string w(word);
  if (const auto it = exceptions_.find(w); it != exceptions_.end()) {
    return it->second;
  }
  const size_t n = w.size();
  const std::string_view s = w;
  const auto ends = [&](std::string_view suf) { return s.ends_with(suf); };
  if (ends("ies") && n > 4) return w.substr(0, n - 3) + "y";
  if (ends("ied") && n > 4) return w.substr(0, n - 3) + "y";
  if (ends("sses") || ends("ches") || ends("shes") || ends("xes") ||
      ends("zes")) {
    return w.substr(0, n - 2);
  }
  if (ends("ss") || ends("us") || ends("is") || ends("as")) return w;
  if (ends("s") && n > 3) return w.substr(0, n - 1);
  if (ends("eed")) {
    return has_vowel(s.substr(0, n - 3)) ? w.substr(0, n - 1) : w;
  }
  if (ends("ed") && n > 4 && has_vowel(s.substr(0, n - 2))) {
    return restore_stem(w.substr(0, n - 2));
  }
  if (ends("ing") && n > 5 && has_vowel(s.substr(0, n - 3))) {
    return restore_stem(w.substr(0, n - 3));
  }
  return w;
}

LemmaAnalysis Lemmatizer::analyze(std::string_view text) const {
  std::vector<std::string> tokens;
  for (const auto& raw : tsv::split(text, ' ')) {
    const auto piece = tsv::trim(raw);
    if (piece.empty()) continue;
    if (piece.find(kXPlaceholder) != std::string_view::npos ||
        piece.find(kYPlaceholder) != std::string_view::npos) {
      continue;
    }
    auto tok = normalize_token(piece);
    if (tok.empty() || determiners().contains(tok)) continue;
    tokens.push_back(std::move(tok));
  }
  if (tokens.empty()) throw DataError("empty predicate");

  LemmaAnalysis out;
  std::vector<std::string> lemmas;
  lemmas.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    const bool verb_position = i == 0 || auxiliaries().contains(tokens[i - 1]);
    std::string lemma =
        verb_position ? lemmatize_word(tokens[i]) : tokens[i];
    if (verb_position && out.head_verb.empty() &&
        !auxiliaries().contains(tokens[i]) && !auxiliaries().contains(lemma)) {
      out.head_verb = lemma;
    }
    lemmas.push_back(std::move(lemma));
  }
  if (out.head_verb.empty()) out.head_verb = lemmas.front();
  out.phrase = tsv::join(lemmas, ' ');
  return out;
}

LemmaAnalysis analyze_predicate(const Proposition& p,
                                const Lemmatizer& lemmatizer) {
  if (const auto& hint = p.predicate_lemma_hint()) {
    return lemmatizer.analyze(*hint);
  }
  return lemmatizer.analyze(p.template_text());
}

std::string lemmatize_predicate(const Proposition& p,
                                const Lemmatizer& lemmatizer) {
  return analyze_predicate(p, lemmatizer).phrase;
}

}  // namespace entailprobe
