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

#include <algorithm>

#include <fmt/format.h>

#include "entailprobe/tsv.hpp"

namespace entailprobe {

void PredicatePool::add(const TypeSignature& sig, std::string template_text,
                        std::optional<std::string> hint) {
  auto& entries = pool_[sig];
  const bool dup = std::any_of(entries.begin(), entries.end(), [&](auto& e) {
    return e.template_text == template_text;
  });
  if (!dup) entries.push_back({std::move(template_text), std::move(hint)});
}

std::span<const PoolEntry> PredicatePool::candidates(
    const TypeSignature& sig) const {
  const auto it = pool_.find(sig);
  if (it == pool_.end()) return {};
  return it->second;
}

size_t PredicatePool::size() const {
  size_t n = 0;
  for (const auto& [_, v] : pool_) n += v.size();
  return n;
}

PredicatePool build_predicate_pool(const std::vector<NLISample>& dev) {
  PredicatePool pool;
  for (const auto& s : dev) {
    pool.add(TypeSignature::of(s.premise), s.premise.template_text(),
             s.premise.predicate_lemma_hint());
  }
  return pool;
}

PredicatePool build_predicate_pool(const std::filesystem::path& dev_path,
                                   const EntityTypeSet& types) {
  return build_predicate_pool(
      parse_dataset(dev_path, TaskVariant::kI, types).samples);
}

TransformResult transform_random_premise(const std::vector<NLISample>& samples,
                                         const PredicatePool& pool,
                                         Seed seed) {
  TransformResult out;
  out.samples.reserve(samples.size());
  for (const auto& s : samples) {
    const auto sig = TypeSignature::of(s.premise);
    std::vector<const PoolEntry*> alternatives;
    for (const auto& e : pool.candidates(sig)) {
      if (e.template_text != s.premise.template_text()) alternatives.push_back(&e);
    }
    if (alternatives.empty()) {
      out.exclusions.push_back(
          {s.id, TaskVariant::kRP,
           fmt::format("no alternative premise template for signature ({}, {})",
                       sig.x_type, sig.y_type)});
      continue;
    }
    KeyedRng rng(seed, stream_key({"rp", s.id}));
    const auto* pick = alternatives[rng.uniform_index(alternatives.size())];
    NLISample t = s;
    t.premise = s.premise.with_template(pick->template_text,
                                        pick->predicate_lemma_hint);
    t.gold = Label::kNoEntail;
    t.variant = TaskVariant::kRP;
    out.samples.push_back(std::move(t));
  }
  return out;
}

std::string typed_identifier(std::string_view etype, SlotId slot) {
  std::string name(etype);
  std::replace(name.begin(), name.end(), '_', ' ');
  return fmt::format("{} {}", name, to_string(slot));
}

std::vector<NLISample> transform_type_args(
    const std::vector<NLISample>& samples) {
  std::vector<NLISample> out;
  out.reserve(samples.size());
  auto typed = [](const ArgumentSlot& a) {
    return ArgumentSlot{typed_identifier(a.etype, a.slot), a.etype, a.slot};
  };
  for (const auto& s : samples) {
    NLISample t = s;
    t.premise = s.premise.with_args(typed(s.premise.arg_x()),
                                    typed(s.premise.arg_y()));
    t.hypothesis = s.hypothesis.with_args(typed(s.hypothesis.arg_x()),
                                          typed(s.hypothesis.arg_y()));
    if (s.variant == TaskVariant::kI) t.variant = TaskVariant::kTA;
    if (s.variant == TaskVariant::kRP) t.variant = TaskVariant::kRPTA;
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

// Replacement for one original entity; identical for every sample in the
// pair because the stream is keyed by pair and entity, not by sample.
std::string draw_replacement(std::span<const EntityIndexRecord> pool,
                             const ArgumentSlot& original,
                             std::string_view pair_id, FrequencyBand band,
                             Seed seed) {
  KeyedRng rng(seed, stream_key({"ra", to_string(band), pair_id,
                                 original.etype, original.surface}));
  const auto& first = pool[rng.uniform_index(pool.size())];
  if (first.surface != original.surface || pool.size() == 1) {
    return first.surface;
  }
  // One resample over the pool minus the original.
  std::vector<const EntityIndexRecord*> others;
  for (const auto& r : pool) {
    if (r.surface != original.surface) others.push_back(&r);
  }
  return others[rng.uniform_index(others.size())]->surface;
}

}  // namespace

TransformResult transform_random_args(const std::vector<NLISample>& samples,
                                      const EntityIndex& index,
                                      FrequencyBand band, Seed seed) {
  const TaskVariant variant = band == FrequencyBand::kLow5Pct
                                  ? TaskVariant::kRALow
                                  : TaskVariant::kRAHigh;
  TransformResult out;
  out.samples.reserve(samples.size());
  for (const auto& s : samples) {
    const auto& ox = s.premise.arg_x();
    const auto& oy = s.premise.arg_y();
    const auto pool_x = index.band(ox.etype, band);
    const auto pool_y = index.band(oy.etype, band);
    if (pool_x.empty() || pool_y.empty()) {
      out.exclusions.push_back(
          {s.id, variant,
           fmt::format("empty {} entity pool for type '{}'", to_string(band),
                       pool_x.empty() ? ox.etype : oy.etype)});
      continue;
    }
    ArgumentSlot nx{draw_replacement(pool_x, ox, s.pair_id, band, seed),
                    ox.etype, SlotId::kX};
    ArgumentSlot ny{draw_replacement(pool_y, oy, s.pair_id, band, seed),
                    oy.etype, SlotId::kY};
    NLISample t = s;
    t.premise = s.premise.with_args(nx, ny);
    t.hypothesis = s.hypothesis.with_args(nx, ny);
    t.variant = variant;
    out.samples.push_back(std::move(t));
  }
  return out;
}

TransformResult compose_rp_ta(const std::vector<NLISample>& samples,
                              const PredicatePool& pool, Seed seed) {
  auto rp = transform_random_premise(samples, pool, seed);
  TransformResult out;
  out.samples = transform_type_args(rp.samples);
  for (auto& s : out.samples) s.variant = TaskVariant::kRPTA;
  out.exclusions = std::move(rp.exclusions);
  for (auto& e : out.exclusions) e.variant = TaskVariant::kRPTA;
  return out;
}

std::string serialize_exclusions(const std::vector<Exclusion>& exclusions) {
  std::string out;
  out.append(tsv::kFormatLine).push_back('\n');
  out.append("variant\tsample_id\treason\n");
  for (const auto& e : exclusions) {
    out.append(fmt::format("{}\t{}\t{}\n", to_string(e.variant), e.sample_id,
                           e.reason));
  }
  return out;
}

}  // namespace entailprobe
