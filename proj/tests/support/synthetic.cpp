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

#include "synthetic.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/lemmatizer.hpp"
#include "entailprobe/rng.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe::testing {
namespace {

struct PredicatePair {
  const char* x_type;
  const char* y_type;
  const char* premise;
  const char* hypothesis;
};

// Each type signature has at least two pairs so random-premise draws have
// somewhere to go.
constexpr PredicatePair kPairs[] = {
    {"person", "location", "{X} was born in {Y}", "{X} is from {Y}"},
    {"person", "location", "{X} moved to {Y}", "{X} lives in {Y}"},
    {"person", "location", "{X} governs {Y}", "{X} leads {Y}"},
    {"organization", "organization", "{X} bought {Y}", "{X} owns {Y}"},
    {"organization", "organization", "{X} acquired {Y}", "{X} controls {Y}"},
    {"organization", "organization", "{X} merged with {Y}", "{X} joined {Y}"},
    {"person", "organization", "{X} founded {Y}", "{X} started {Y}"},
    {"person", "organization", "{X} chairs {Y}", "{X} is a member of {Y}"},
    {"person", "organization", "{X} was hired by {Y}", "{X} works for {Y}"},
    {"person", "organization", "{X} resigned from {Y}", "{X} left {Y}"},
    {"person", "person", "{X} married {Y}", "{X} knows {Y}"},
    {"person", "person", "{X} defeated {Y}", "{X} played against {Y}"},
    {"person", "person", "{X} mentored {Y}", "{X} met {Y}"},
    {"person", "award", "{X} won {Y}", "{X} was nominated for {Y}"},
    {"person", "award", "{X} received {Y}", "{X} holds {Y}"},
    {"organization", "product", "{X} manufactures {Y}", "{X} sells {Y}"},
    {"organization", "product", "{X} launched {Y}", "{X} released {Y}"},
    {"organization", "product", "{X} discontinued {Y}", "{X} stopped making {Y}"},
    {"person", "written_work", "{X} wrote {Y}", "{X} is the author of {Y}"},
    {"person", "written_work", "{X} translated {Y}", "{X} read {Y}"},
    {"person", "music", "{X} composed {Y}", "{X} performed {Y}"},
    {"person", "music", "{X} recorded {Y}", "{X} sang {Y}"},
    {"person", "disease", "{X} died of {Y}", "{X} suffered from {Y}"},
    {"person", "disease", "{X} was diagnosed with {Y}", "{X} has {Y}"},
    {"organization", "location", "{X} is headquartered in {Y}", "{X} is based in {Y}"},
    {"organization", "location", "{X} expanded into {Y}", "{X} operates in {Y}"},
    {"location", "location", "{X} borders {Y}", "{X} is near {Y}"},
    {"location", "location", "{X} is the capital of {Y}", "{X} is located in {Y}"},
    {"government", "location", "{X} invaded {Y}", "{X} attacked {Y}"},
    {"government", "location", "{X} annexed {Y}", "{X} occupies {Y}"},
    {"person", "sports", "{X} coached {Y}", "{X} is involved in {Y}"},
    {"person", "sports", "{X} won a title in {Y}", "{X} competed in {Y}"},
};

constexpr const char* kSyllables[] = {"ka", "vo", "ru", "mel", "tan", "si", "dor", "lu",
                                      "ber", "na", "quin", "zo", "fa", "rik", "el", "mon",
                                      "tes", "ari", "gol", "pen"};

const std::map<std::string, std::string>& type_suffix() {
  static const std::map<std::string, std::string> m = {
      {"organization", " Group"}, {"product", " Pro"},       {"award", " Prize"},
      {"written_work", " Papers"}, {"music", " Suite"},      {"disease", " syndrome"},
      {"government", " Republic"}, {"sports", " ball"},
  };
  return m;
}

std::string pseudo_word(KeyedRng& rng) {
  std::string w;
  const size_t n = 2 + rng.uniform_index(2);
  for (size_t i = 0; i < n; ++i) w += kSyllables[rng.uniform_index(std::size(kSyllables))];
  w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::vector<std::string> surfaces_for(const std::string& type, size_t count, Seed seed) {
  KeyedRng rng(seed, stream_key({"synthetic", "entity", type}));
  std::set<std::string> seen;
  std::vector<std::string> out;
  const auto suffix = type_suffix().count(type) ? type_suffix().at(type) : std::string();
  while (out.size() < count) {
    std::string s = pseudo_word(rng);
    if (type == "person") s += " " + pseudo_word(rng);
    s += suffix;
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

Proposition make_prop(const char* tmpl, const std::string& x, const char* xt,
                      const std::string& y, const char* yt) {
  return Proposition(tmpl, ArgumentSlot{x, xt, SlotId::kX}, ArgumentSlot{y, yt, SlotId::kY});
}

std::vector<NLISample> make_pairs(size_t count, std::string_view prefix, std::string_view stream,
                                  const std::map<std::string, std::vector<std::string>>& ents,
                                  Seed seed) {
  std::vector<NLISample> out;
  out.reserve(2 * count);
  for (size_t i = 0; i < count; ++i) {
    const std::string idx = fmt::format("{:06}", i);
    KeyedRng rng(seed, stream_key({"synthetic", stream, idx}));
    const auto& pp = kPairs[rng.uniform_index(std::size(kPairs))];
    const auto& xs = ents.at(pp.x_type);
    const auto& ys = ents.at(pp.y_type);
    const std::string& x = xs[rng.uniform_index(xs.size())];
    std::string y = ys[rng.uniform_index(ys.size())];
    while (y == x) y = ys[rng.uniform_index(ys.size())];
    const Proposition p = make_prop(pp.premise, x, pp.x_type, y, pp.y_type);
    const Proposition h = make_prop(pp.hypothesis, x, pp.x_type, y, pp.y_type);
    const std::string pair_id = fmt::format("{}{}", prefix, idx);
    out.push_back({pair_id + "-f", pair_id, Direction::kForward, p, h, Label::kEntail,
                   TaskVariant::kI});
    out.push_back({pair_id + "-r", pair_id, Direction::kReverse, h, p, Label::kNoEntail,
                   TaskVariant::kI});
  }
  return out;
}

constexpr double kYearTotal = 1e10;

}  // namespace

SyntheticCorpus make_corpus(const SyntheticSpec& spec) {
  const Seed seed{spec.seed};
  SyntheticCorpus c;

  std::set<std::string> types;
  for (const auto& pp : kPairs) {
    types.insert(pp.x_type);
    types.insert(pp.y_type);
  }
  std::map<std::string, std::vector<std::string>> ents;
  for (const auto& t : types) {
    ents[t] = surfaces_for(t, spec.entities_per_type, seed);
    for (size_t r = 0; r < ents[t].size(); ++r) {
      const double base = 1e6 / std::pow(static_cast<double>(r + 1), 1.1);
      c.entities.push_back({ents[t][r], t, static_cast<uint64_t>(base) + 1});
    }
  }
  // Test and dev entities come from disjoint halves so dev never leaks into test.
  std::map<std::string, std::vector<std::string>> test_ents, dev_ents;
  for (const auto& [t, list] : ents) {
    for (size_t i = 0; i < list.size(); ++i) (i % 2 ? dev_ents : test_ents)[t].push_back(list[i]);
  }
  c.samples = make_pairs(spec.pairs, "p", "test", test_ents, seed);
  c.dev = make_pairs(spec.dev_pairs, "d", "dev", dev_ents, seed);

  std::set<std::string> phrases;
  for (const auto& pp : kPairs) {
    phrases.insert(lemmatize_predicate(make_prop(pp.premise, "a", pp.x_type, "b", pp.y_type)));
    phrases.insert(lemmatize_predicate(make_prop(pp.hypothesis, "a", pp.x_type, "b", pp.y_type)));
  }
  const YearRange span{};
  std::string dump;
  for (const auto& phrase : phrases) {
    KeyedRng rng(seed, stream_key({"synthetic", "ngram", phrase}));
    const double base = std::pow(10.0, -7.0 + 3.0 * rng.next_double());
    for (int year = span.first; year <= span.last; ++year) {
      const double count = std::round(base * (0.5 + rng.next_double()) * kYearTotal);
      dump += fmt::format("{}\t{}\t{}\t1\n", phrase, year, static_cast<uint64_t>(count));
      c.store.set(phrase, year, count / kYearTotal);
    }
  }
  c.ngram_dump = std::move(dump);
  for (int year = span.first; year <= span.last; ++year) {
    c.ngram_totals += fmt::format("{}\t{}\n", year, static_cast<uint64_t>(kYearTotal));
  }
  return c;
}

CorpusFiles write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
  CorpusFiles f{dir / "dataset.tsv", dir / "dev.tsv", dir / "entities.tsv",
                dir / "ngram_dump.tsv", dir / "ngram_totals.tsv"};
  write_dataset(f.dataset, corpus.samples);
  write_dataset(f.dev, corpus.dev);
  std::string idx = std::string(tsv::kFormatLine) + "\nsurface\tetype\tmention_count\n";
  for (const auto& e : corpus.entities) {
    idx += fmt::format("{}\t{}\t{}\n", e.surface, e.etype, e.mention_count);
  }
  tsv::write_file(f.entity_index, idx);
  tsv::write_file(f.ngram_dump, corpus.ngram_dump);
  tsv::write_file(f.ngram_totals, corpus.ngram_totals);
  return f;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace entailprobe::testing
