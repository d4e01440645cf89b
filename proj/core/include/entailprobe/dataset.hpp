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

// Data model for directional predicate-inference samples and the dataset
// TSV format.
//
// A dataset file is UTF-8 TSV:
//
//   #format=entailprobe-v1
//   id  pair_id  direction  prem_template  prem_x_surface  prem_x_type
//       prem_y_surface  prem_y_type  hyp_template  hyp_x_surface  hyp_x_type
//       hyp_y_surface  hyp_y_type  gold  [prem_predicate_hint  hyp_predicate_hint]
//
// Templates carry the literal placeholders "{X}" and "{Y}", each exactly once.
// direction is "forward" or "reverse"; gold is "Entail" or "NoEntail". The
// two hint columns are optional on input and always written on output.

#ifndef ENTAILPROBE_DATASET_HPP_
#define ENTAILPROBE_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entailprobe/entity_types.hpp"

namespace entailprobe {

inline constexpr std::string_view kXPlaceholder = "{X}";
inline constexpr std::string_view kYPlaceholder = "{Y}";

enum class SlotId { kX, kY };
enum class Label { kEntail, kNoEntail };
enum class Direction { kForward, kReverse };
enum class TaskVariant { kI, kRP, kTA, kRALow, kRAHigh, kRPTA };

inline constexpr TaskVariant kAllVariants[] = {
    TaskVariant::kI,     TaskVariant::kRP,     TaskVariant::kTA,
    TaskVariant::kRALow, TaskVariant::kRAHigh, TaskVariant::kRPTA};

std::string_view to_string(SlotId s);
std::string_view to_string(Label l);
std::string_view to_string(Direction d);
// "I", "I_RP", "I_TA", "I_RA_low", "I_RA_high", "I_RP_TA".
std::string_view to_string(TaskVariant v);

std::optional<Label> parse_label(std::string_view s);
std::optional<Direction> parse_direction(std::string_view s);
std::optional<TaskVariant> parse_variant(std::string_view s);

struct ArgumentSlot {
  std::string surface;
  std::string etype;
  SlotId slot = SlotId::kX;

  friend bool operator==(const ArgumentSlot&, const ArgumentSlot&) = default;
};

// Substitutes surfaces into a template in a single left-to-right pass.
// Throws DataError if either placeholder is missing.
std::string render_template(std::string_view tmpl, std::string_view x_surface,
                            std::string_view y_surface);

// One predicate with two typed argument slots.
class Proposition {
 public:
  // Throws DataError if the template does not contain each placeholder
  // exactly once, a surface is blank or contains a placeholder, or the slot
  // ids are not {X, Y}.
  Proposition(std::string tmpl, ArgumentSlot x, ArgumentSlot y,
              std::optional<std::string> predicate_lemma_hint = std::nullopt);

  // Builds the template by locating the two surfaces in a sentence. X is
  // matched at its leftmost occurrence, Y at its leftmost occurrence that
  // does not overlap X.
  static Proposition from_sentence(std::string_view sentence, ArgumentSlot x,
                                   ArgumentSlot y);

  const std::string& template_text() const { return template_; }
  const ArgumentSlot& arg_x() const { return x_; }
  const ArgumentSlot& arg_y() const { return y_; }
  const std::optional<std::string>& predicate_lemma_hint() const {
    return hint_;
  }

  std::string render() const;

  Proposition with_template(std::string tmpl,
                            std::optional<std::string> hint) const;
  Proposition with_args(ArgumentSlot x, ArgumentSlot y) const;

  friend bool operator==(const Proposition&, const Proposition&) = default;

 private:
  std::string template_;
  ArgumentSlot x_;
  ArgumentSlot y_;
  std::optional<std::string> hint_;
};

inline std::string render(const Proposition& p) { return p.render(); }

struct NLISample {
  std::string id;
  std::string pair_id;
  Direction direction = Direction::kForward;
  Proposition premise;
  Proposition hypothesis;
  Label gold = Label::kEntail;
  TaskVariant variant = TaskVariant::kI;

  friend bool operator==(const NLISample&, const NLISample&) = default;
};

// Non-fatal findings collected while loading a dataset.
struct ValidationReport {
  size_t sample_count = 0;
  size_t unknown_type_count = 0;
  std::vector<std::string> warnings;
};

struct ParsedDataset {
  std::vector<NLISample> samples;
  ValidationReport report;
};

// Parses dataset TSV text. `source` names the input in error messages.
// Throws DataError on malformed rows (naming line and field) and on
// duplicate ids. Pairing problems become warnings in the report.
ParsedDataset parse_dataset_text(
    std::string_view text, TaskVariant variant, std::string_view source,
    const EntityTypeSet& types = EntityTypeSet::builtin());

ParsedDataset parse_dataset(
    const std::filesystem::path& path, TaskVariant variant,
    const EntityTypeSet& types = EntityTypeSet::builtin());

// Serializes samples in the order given. Throws DataError if a field cannot
// be stored in a TSV cell.
std::string serialize_dataset(const std::vector<NLISample>& samples);

void write_dataset(const std::filesystem::path& path,
                   const std::vector<NLISample>& samples);

// Directional pairing checks: exactly one forward and one reverse sample per
// pair_id; for label-preserving variants forward=Entail, reverse=NoEntail and
// the reverse sample swaps the forward premise and hypothesis.
std::vector<std::string> check_pairing(const std::vector<NLISample>& samples);

// True for variants whose gold labels come unchanged from the source data.
bool preserves_gold(TaskVariant v);

}  // namespace entailprobe

#endif  // ENTAILPROBE_DATASET_HPP_
