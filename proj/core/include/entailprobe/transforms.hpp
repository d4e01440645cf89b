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

// Controlled dataset transformations.
//
//   I_RP     premise template replaced by a random template with the same
//            argument type signature; every output labelled NoEntail.
//   I_TA     argument surfaces replaced by "<type> X" / "<type> Y".
//   I_RA     arguments replaced by random same-type entities from the 5%
//            most or least mentioned records of an entity index; one
//            mapping per pair_id.
//   I_RP_TA  I_TA applied to I_RP.
//
// Randomness comes from KeyedRng streams keyed by sample or pair identity,
// so the output for a sample does not depend on the rest of the input.
// Samples that cannot be transformed are reported, never silently dropped.

#ifndef ENTAILPROBE_TRANSFORMS_HPP_
#define ENTAILPROBE_TRANSFORMS_HPP_

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entailprobe/dataset.hpp"
#include "entailprobe/entity_index.hpp"
#include "entailprobe/rng.hpp"

namespace entailprobe {

struct TypeSignature {
  std::string x_type;
  std::string y_type;

  static TypeSignature of(const Proposition& p) {
    return {p.arg_x().etype, p.arg_y().etype};
  }
  friend auto operator<=>(const TypeSignature&, const TypeSignature&) = default;
};

struct PoolEntry {
  std::string template_text;
  std::optional<std::string> predicate_lemma_hint;
};

// Premise templates grouped by argument type signature. Entries keep first
// insertion order; duplicate template strings under a signature collapse.
class PredicatePool {
 public:
  void add(const TypeSignature& sig, std::string template_text,
           std::optional<std::string> hint = std::nullopt);
  std::span<const PoolEntry> candidates(const TypeSignature& sig) const;
  size_t signature_count() const { return pool_.size(); }
  size_t size() const;

 private:
  std::map<TypeSignature, std::vector<PoolEntry>> pool_;
};

PredicatePool build_predicate_pool(const std::vector<NLISample>& dev);
PredicatePool build_predicate_pool(
    const std::filesystem::path& dev_path,
    const EntityTypeSet& types = EntityTypeSet::builtin());

struct Exclusion {
  std::string sample_id;
  TaskVariant variant = TaskVariant::kI;
  std::string reason;
  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct TransformResult {
  std::vector<NLISample> samples;
  std::vector<Exclusion> exclusions;
};

TransformResult transform_random_premise(const std::vector<NLISample>& samples,
                                         const PredicatePool& pool, Seed seed);

std::vector<NLISample> transform_type_args(
    const std::vector<NLISample>& samples);

TransformResult transform_random_args(const std::vector<NLISample>& samples,
                                      const EntityIndex& index,
                                      FrequencyBand band, Seed seed);

TransformResult compose_rp_ta(const std::vector<NLISample>& samples,
                              const PredicatePool& pool, Seed seed);

// Typed identifier used by I_TA, e.g. "location X". Underscores in the type
// name become spaces ("body_part" -> "body part X").
std::string typed_identifier(std::string_view etype, SlotId slot);

// TSV: #format line, then "variant  sample_id  reason" rows.
std::string serialize_exclusions(const std::vector<Exclusion>& exclusions);

}  // namespace entailprobe

#endif  // ENTAILPROBE_TRANSFORMS_HPP_
