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

#include "entailprobe/transforms.hpp"

#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "entailprobe/error.hpp"
#include "synthetic.hpp"

namespace entailprobe {
namespace {

Proposition prop(std::string tmpl, std::string x, std::string xt, std::string y, std::string yt) {
  return Proposition(std::move(tmpl), {std::move(x), std::move(xt), SlotId::kX},
                     {std::move(y), std::move(yt), SlotId::kY});
}

NLISample sample(std::string id, std::string pair, Direction d, Proposition p, Proposition h,
                 Label gold) {
  return {std::move(id), std::move(pair), d, std::move(p), std::move(h), gold, TaskVariant::kI};
}

std::vector<NLISample> bush_pair() {
  const auto p = prop("{X} was the Governor of {Y}", "George Bush", "person", "Texas", "location");
  const auto h = prop("{X} is a politician from {Y}", "George Bush", "person", "Texas", "location");
  return {sample("b-f", "b", Direction::kForward, p, h, Label::kEntail),
          sample("b-r", "b", Direction::kReverse, h, p, Label::kNoEntail)};
}

std::vector<NLISample> india_pair() {
  const auto p = prop("{X} exports tons of {Y}", "India", "location", "rice", "food");
  const auto h = prop("{X} exports {Y}", "India", "location", "rice", "food");
  return {sample("i-f", "i", Direction::kForward, p, h, Label::kEntail),
          sample("i-r", "i", Direction::kReverse, h, p, Label::kNoEntail)};
}

TEST(RandomPremise, ForcedChoiceAndNoEntail) {
  PredicatePool pool;
  const TypeSignature sig{"person", "location"};
  pool.add(sig, "{X} was the Governor of {Y}");
  pool.add(sig, "{X} resided in {Y}");
  const auto r = transform_random_premise(bush_pair(), pool, Seed{1});
  ASSERT_EQ(r.samples.size(), 2u);
  EXPECT_TRUE(r.exclusions.empty());
  const auto& fwd = r.samples[0];
  EXPECT_EQ(fwd.premise.render(), "George Bush resided in Texas");
  EXPECT_EQ(fwd.hypothesis, bush_pair()[0].hypothesis);
  EXPECT_EQ(fwd.gold, Label::kNoEntail);
  EXPECT_EQ(fwd.variant, TaskVariant::kRP);
  EXPECT_EQ(r.samples[1].gold, Label::kNoEntail);
}

TEST(RandomPremise, MissingSignatureIsExcludedNotDropped) {
  PredicatePool pool;
  pool.add({"person", "location"}, "{X} resided in {Y}");
  auto samples = bush_pair();
  for (auto& s : india_pair()) samples.push_back(s);
  const auto r = transform_random_premise(samples, pool, Seed{1});
  EXPECT_EQ(r.samples.size(), 2u);
  ASSERT_EQ(r.exclusions.size(), 2u);
  EXPECT_EQ(r.exclusions[0].sample_id, "i-f");
  EXPECT_EQ(r.exclusions[0].variant, TaskVariant::kRP);
  const std::string tsv = serialize_exclusions(r.exclusions);
  EXPECT_NE(tsv.find("I_RP\ti-f\t"), std::string::npos);
}

TEST(RandomPremise, OnlyCandidateEqualToOriginalIsExcluded) {
  PredicatePool pool;
  pool.add({"person", "location"}, "{X} was the Governor of {Y}");
  const auto r = transform_random_premise({bush_pair()[0]}, pool, Seed{1});
  EXPECT_TRUE(r.samples.empty());
  EXPECT_EQ(r.exclusions.size(), 1u);
}

TEST(RandomPremise, UniformOverCandidates) {
  PredicatePool pool;
  const TypeSignature sig{"person", "location"};
  for (const char* t : {"{X} a {Y}", "{X} b {Y}", "{X} c {Y}", "{X} d {Y}"}) pool.add(sig, t);
  std::vector<NLISample> samples;
  for (int i = 0; i < 1000; ++i) {
    const auto p = prop("{X} orig {Y}", "P", "person", "L", "location");
    samples.push_back(sample(fmt::format("s{}", i), fmt::format("p{}", i), Direction::kForward,
                             p, p, Label::kEntail));
  }
  const auto r = transform_random_premise(samples, pool, Seed{2024});
  std::map<std::string, int> counts;
  for (const auto& s : r.samples) ++counts[s.premise.template_text()];
  ASSERT_EQ(counts.size(), 4u);
  // Chi-square with 3 dof; 16.27 is the 0.001 critical value.
  double chi2 = 0;
  for (const auto& [t, c] : counts) {
    chi2 += (c - 250.0) * (c - 250.0) / 250.0;
    EXPECT_NEAR(c, 250, 3 * std::sqrt(1000 * 0.25 * 0.75)) << t;
  }
  EXPECT_LT(chi2, 16.27);
}

TEST(TypeArgs, TypedIdentifiers) {
  const auto out = transform_type_args(india_pair());
  EXPECT_EQ(out[0].premise.render(), "location X exports tons of food Y");
  EXPECT_EQ(out[0].hypothesis.render(), "location X exports food Y");
  EXPECT_EQ(out[0].gold, Label::kEntail);
  EXPECT_EQ(out[1].gold, Label::kNoEntail);
  EXPECT_EQ(out[0].variant, TaskVariant::kTA);
  EXPECT_EQ(typed_identifier("body_part", SlotId::kY), "body part Y");
}

TEST(TypeArgs, SameTypeArgumentsStayDistinct) {
  const auto p = prop("{X} married {Y}", "Ann", "person", "Bob", "person");
  const auto out = transform_type_args({sample("m", "m", Direction::kForward, p, p, Label::kEntail)});
  EXPECT_EQ(out[0].premise.render(), "person X married person Y");
}

TEST(TypeArgs, Idempotent) {
  const auto once = transform_type_args(india_pair());
  EXPECT_EQ(transform_type_args(once), once);
}

EntityIndex band_index() {
  std::vector<EntityIndexRecord> recs;
  for (int i = 0; i < 100; ++i) {
    recs.push_back({fmt::format("loc{:03}", i), "location", static_cast<uint64_t>(1000 - i)});
    recs.push_back({fmt::format("food{:03}", i), "food", static_cast<uint64_t>(1000 - i)});
  }
  recs.push_back({"India", "location", 5000});
  recs.push_back({"rice", "food", 5000});
  return EntityIndex(recs);
}

TEST(RandomArgs, HighBandDrawsOnlyFromTopRecords) {
  const auto idx = band_index();
  std::set<std::string> allowed;
  for (const auto& r : idx.band("location", FrequencyBand::kHigh5Pct)) allowed.insert(r.surface);
  for (const auto& r : idx.band("food", FrequencyBand::kHigh5Pct)) allowed.insert(r.surface);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = transform_random_args(india_pair(), idx, FrequencyBand::kHigh5Pct, Seed{seed});
    for (const auto& s : r.samples) {
      EXPECT_TRUE(allowed.count(s.premise.arg_x().surface));
      EXPECT_TRUE(allowed.count(s.premise.arg_y().surface));
      EXPECT_NE(s.premise.arg_x().surface, "India");  // original resampled away
      EXPECT_NE(s.premise.arg_y().surface, "rice");
    }
  }
}

TEST(RandomArgs, SameMappingAcrossPairAndGoldKept) {
  const auto r = transform_random_args(india_pair(), band_index(), FrequencyBand::kLow5Pct,
                                       Seed{77});
  ASSERT_EQ(r.samples.size(), 2u);
  const auto& f = r.samples[0];
  const auto& b = r.samples[1];
  EXPECT_EQ(f.premise.arg_x(), b.premise.arg_x());
  EXPECT_EQ(f.premise.arg_y(), b.premise.arg_y());
  EXPECT_EQ(f.premise, b.hypothesis);
  EXPECT_EQ(f.gold, Label::kEntail);
  EXPECT_EQ(b.gold, Label::kNoEntail);
  EXPECT_EQ(f.variant, TaskVariant::kRALow);
  EXPECT_TRUE(check_pairing(r.samples).empty());
}

TEST(RandomArgs, EmptyBandExcludes) {
  const auto r =
      transform_random_args(bush_pair(), band_index(), FrequencyBand::kLow5Pct, Seed{1});
  EXPECT_TRUE(r.samples.empty());
  ASSERT_EQ(r.exclusions.size(), 2u);
  EXPECT_NE(r.exclusions[0].reason.find("person"), std::string::npos);
}

TEST(RandomArgs, SingleRecordPoolAcceptsOriginal) {
  const EntityIndex idx({{"India", "location", 1}, {"rice", "food", 1}});
  const auto r = transform_random_args(india_pair(), idx, FrequencyBand::kHigh5Pct, Seed{1});
  EXPECT_EQ(r.samples[0].premise.render(), "India exports tons of rice");
}

TEST(ComposeRpTa, EqualsSequentialApplication) {
  const auto corpus = testing::make_corpus({.pairs = 60, .dev_pairs = 40, .seed = 5});
  const auto pool = build_predicate_pool(corpus.dev);
  const auto composed = compose_rp_ta(corpus.samples, pool, Seed{9});
  auto seq = transform_type_args(transform_random_premise(corpus.samples, pool, Seed{9}).samples);
  ASSERT_EQ(composed.samples.size(), seq.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(composed.samples[i], seq[i]);
    EXPECT_EQ(composed.samples[i].variant, TaskVariant::kRPTA);
    EXPECT_EQ(composed.samples[i].gold, Label::kNoEntail);
  }
}

TEST(PredicatePool, CountsDedupsAndKeysBySignatureOrder) {
  const auto pl = [](const char* t) { return prop(t, "P", "person", "L", "location"); };
  const auto lp = prop("{X} hosted {Y}", "L", "location", "P", "person");
  std::vector<NLISample> dev = {
      sample("1", "1", Direction::kForward, pl("{X} lives in {Y}"), pl("{X} a {Y}"), Label::kEntail),
      sample("2", "2", Direction::kForward, pl("{X} moved to {Y}"), pl("{X} a {Y}"), Label::kEntail),
      sample("3", "3", Direction::kForward, pl("{X} visited {Y}"), pl("{X} a {Y}"), Label::kEntail),
      sample("4", "4", Direction::kForward, pl("{X} visited {Y}"), pl("{X} a {Y}"), Label::kEntail),
      sample("5", "5", Direction::kForward, lp, lp, Label::kEntail),
  };
  const auto pool = build_predicate_pool(dev);
  EXPECT_EQ(pool.candidates({"person", "location"}).size(), 3u);
  ASSERT_EQ(pool.candidates({"location", "person"}).size(), 1u);
  EXPECT_EQ(pool.candidates({"location", "person"})[0].template_text, "{X} hosted {Y}");
  EXPECT_EQ(pool.signature_count(), 2u);
}

// Properties over a larger synthetic corpus.
class TransformProperties : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    corpus_ = new testing::SyntheticCorpus(
        testing::make_corpus({.pairs = 300, .dev_pairs = 80, .seed = 19}));
    index_ = new EntityIndex(corpus_->entities);
  }
  static void TearDownTestSuite() {
    delete corpus_;
    delete index_;
  }
  static testing::SyntheticCorpus* corpus_;
  static EntityIndex* index_;
};
testing::SyntheticCorpus* TransformProperties::corpus_ = nullptr;
EntityIndex* TransformProperties::index_ = nullptr;

TEST_F(TransformProperties, TypeSignaturesArePreserved) {
  const auto pool = build_predicate_pool(corpus_->dev);
  std::map<std::string, const NLISample*> orig;
  for (const auto& s : corpus_->samples) orig[s.id] = &s;
  std::vector<std::vector<NLISample>> outputs = {
      transform_random_premise(corpus_->samples, pool, Seed{1}).samples,
      transform_type_args(corpus_->samples),
      transform_random_args(corpus_->samples, *index_, FrequencyBand::kLow5Pct, Seed{1}).samples,
      transform_random_args(corpus_->samples, *index_, FrequencyBand::kHigh5Pct, Seed{1}).samples,
      compose_rp_ta(corpus_->samples, pool, Seed{1}).samples};
  for (const auto& out : outputs) {
    for (const auto& s : out) {
      const auto& o = *orig.at(s.id);
      EXPECT_EQ(TypeSignature::of(s.premise), TypeSignature::of(o.premise));
      EXPECT_EQ(TypeSignature::of(s.hypothesis), TypeSignature::of(o.hypothesis));
    }
  }
}

TEST_F(TransformProperties, RandomArgsAreNovelAndPairConsistent) {
  for (auto band : {FrequencyBand::kLow5Pct, FrequencyBand::kHigh5Pct}) {
    const auto r = transform_random_args(corpus_->samples, *index_, band, Seed{3});
    EXPECT_TRUE(check_pairing(r.samples).empty());
    std::map<std::string, const NLISample*> orig;
    for (const auto& s : corpus_->samples) orig[s.id] = &s;
    std::map<std::string, std::map<std::string, std::string>> mapping;  // pair -> orig -> new
    for (const auto& s : r.samples) {
      const auto& o = *orig.at(s.id);
      EXPECT_EQ(s.gold, o.gold);
      for (auto [from, to] : {std::pair{&o.premise.arg_x(), &s.premise.arg_x()},
                              std::pair{&o.premise.arg_y(), &s.premise.arg_y()}}) {
        EXPECT_NE(from->surface, to->surface);
        auto [it, fresh] = mapping[s.pair_id].emplace(from->surface, to->surface);
        EXPECT_EQ(it->second, to->surface) << s.id;
      }
    }
  }
}

TEST_F(TransformProperties, DeterministicForFixedSeed) {
  const auto pool = build_predicate_pool(corpus_->dev);
  const auto a = serialize_dataset(transform_random_premise(corpus_->samples, pool, Seed{4}).samples);
  const auto b = serialize_dataset(transform_random_premise(corpus_->samples, pool, Seed{4}).samples);
  const auto c = serialize_dataset(transform_random_premise(corpus_->samples, pool, Seed{5}).samples);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST_F(TransformProperties, OutputIndependentOfInputOrder) {
  auto reversed = corpus_->samples;
  std::reverse(reversed.begin(), reversed.end());
  const auto fwd = transform_random_args(corpus_->samples, *index_, FrequencyBand::kLow5Pct, Seed{8});
  auto rev = transform_random_args(reversed, *index_, FrequencyBand::kLow5Pct, Seed{8});
  std::reverse(rev.samples.begin(), rev.samples.end());
  EXPECT_EQ(fwd.samples, rev.samples);
}

}  // namespace
}  // namespace entailprobe
