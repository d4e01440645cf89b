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

#include "entailprobe/dataset.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

constexpr std::array<std::string_view, 16> kColumns = {
    "id",             "pair_id",        "direction",      "prem_template",
    "prem_x_surface", "prem_x_type",    "prem_y_surface", "prem_y_type",
    "hyp_template",   "hyp_x_surface",  "hyp_x_type",     "hyp_y_surface",
    "hyp_y_type",     "gold",           "prem_predicate_hint",
    "hyp_predicate_hint"};
constexpr size_t kRequiredColumns = 14;

size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  size_t n = 0;
  for (size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

bool contains_placeholder(std::string_view s) {
  return s.find(kXPlaceholder) != std::string_view::npos ||
         s.find(kYPlaceholder) != std::string_view::npos;
}

std::string header_line() {
  std::vector<std::string> cols(kColumns.begin(), kColumns.end());
  return tsv::join(cols);
}

}  // namespace

std::string_view to_string(SlotId s) { return s == SlotId::kX ? "X" : "Y"; }

std::string_view to_string(Label l) {
  return l == Label::kEntail ? "Entail" : "NoEntail";
}

std::string_view to_string(Direction d) {
  return d == Direction::kForward ? "forward" : "reverse";
}

std::string_view to_string(TaskVariant v) {
  switch (v) {
    case TaskVariant::kI: return "I";
    case TaskVariant::kRP: return "I_RP";
    case TaskVariant::kTA: return "I_TA";
    case TaskVariant::kRALow: return "I_RA_low";
    case TaskVariant::kRAHigh: return "I_RA_high";
    case TaskVariant::kRPTA: return "I_RP_TA";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view s) {
  if (s == "Entail") return Label::kEntail;
  if (s == "NoEntail") return Label::kNoEntail;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "forward") return Direction::kForward;
  if (s == "reverse") return Direction::kReverse;
  return std::nullopt;
}

std::optional<TaskVariant> parse_variant(std::string_view s) {
  for (auto v : kAllVariants) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

bool preserves_gold(TaskVariant v) {
  return v == TaskVariant::kI || v == TaskVariant::kTA ||
         v == TaskVariant::kRALow || v == TaskVariant::kRAHigh;
}

std::string render_template(std::string_view tmpl, std::string_view x_surface,
                            std::string_view y_surface) {
  std::string out;
  out.reserve(tmpl.size() + x_surface.size() + y_surface.size());
  bool saw_x = false;
  bool saw_y = false;
  size_t i = 0;
  while (i < tmpl.size()) {
    const auto rest = tmpl.substr(i);
    if (rest.starts_with(kXPlaceholder)) {
      out.append(x_surface);
      saw_x = true;
      i += kXPlaceholder.size();
    } else if (rest.starts_with(kYPlaceholder)) {
      out.append(y_surface);
      saw_y = true;
      i += kYPlaceholder.size();
    } else {
      out.push_back(tmpl[i]);
      ++i;
    }
  }
  if (!saw_x || !saw_y) {
    throw DataError(fmt::format("template '{}' is missing placeholder {}", tmpl,
                                saw_x ? kYPlaceholder : kXPlaceholder));
  }
  return out;
}

Proposition::Proposition(std::string tmpl, ArgumentSlot x, ArgumentSlot y,
                         std::optional<std::string> predicate_lemma_hint)
    : template_(std::move(tmpl)),
      x_(std::move(x)),
      y_(std::move(y)),
      hint_(std::move(predicate_lemma_hint)) {
  if (count_occurrences(template_, kXPlaceholder) != 1 ||
      count_occurrences(template_, kYPlaceholder) != 1) {
    throw DataError(fmt::format(
        "template '{}' must contain {} and {} exactly once", template_,
        kXPlaceholder, kYPlaceholder));
  }
  if (x_.slot != SlotId::kX || y_.slot != SlotId::kY) {
    throw DataError("proposition slots must be X and Y");
  }
  for (const auto* arg : {&x_, &y_}) {
    if (tsv::trim(arg->surface).empty()) {
      throw DataError(fmt::format("argument {} surface is empty",
                                  to_string(arg->slot)));
    }
    if (contains_placeholder(arg->surface)) {
      throw DataError(fmt::format("argument surface '{}' contains a placeholder",
                                  arg->surface));
    }
    if (arg->etype.empty()) {
      throw DataError(fmt::format("argument {} has no entity type",
                                  to_string(arg->slot)));
    }
  }
  if (hint_ && hint_->empty()) hint_.reset();
}

Proposition Proposition::from_sentence(std::string_view sentence,
                                       ArgumentSlot x, ArgumentSlot y) {
  if (x.surface.empty() || y.surface.empty()) {
    throw DataError("cannot templatize with an empty surface");
  }
  const size_t xpos = sentence.find(x.surface);
  if (xpos == std::string_view::npos) {
    throw DataError(fmt::format("surface '{}' not found in '{}'", x.surface,
                                sentence));
  }
  const size_t xend = xpos + x.surface.size();
  size_t ypos = std::string_view::npos;
  for (size_t p = sentence.find(y.surface); p != std::string_view::npos;
       p = sentence.find(y.surface, p + 1)) {
    const size_t pend = p + y.surface.size();
    if (pend <= xpos || p >= xend) {
      ypos = p;
      break;
    }
  }
  if (ypos == std::string_view::npos) {
    throw DataError(fmt::format("surface '{}' not found apart from '{}' in '{}'",
                                y.surface, x.surface, sentence));
  }
  std::string tmpl;
  if (xpos < ypos) {
    tmpl = fmt::format("{}{}{}{}{}", sentence.substr(0, xpos), kXPlaceholder,
                       sentence.substr(xend, ypos - xend), kYPlaceholder,
                       sentence.substr(ypos + y.surface.size()));
  } else {
    const size_t yend = ypos + y.surface.size();
    tmpl = fmt::format("{}{}{}{}{}", sentence.substr(0, ypos), kYPlaceholder,
                       sentence.substr(yend, xpos - yend), kXPlaceholder,
                       sentence.substr(xend));
  }
  return Proposition(std::move(tmpl), std::move(x), std::move(y));
}

std::string Proposition::render() const {
  return render_template(template_, x_.surface, y_.surface);
}

Proposition Proposition::with_template(std::string tmpl,
                                       std::optional<std::string> hint) const {
  return Proposition(std::move(tmpl), x_, y_, std::move(hint));
}

Proposition Proposition::with_args(ArgumentSlot x, ArgumentSlot y) const {
  return Proposition(template_, std::move(x), std::move(y), hint_);
}

std::vector<std::string> check_pairing(const std::vector<NLISample>& samples) {
  std::vector<std::string> warnings;
  // Ordered map keeps warning order independent of row order.
  std::map<std::string, std::vector<size_t>> pairs;
  for (size_t i = 0; i < samples.size(); ++i) {
    pairs[samples[i].pair_id].push_back(i);
  }
  for (const auto& [pair_id, idx] : pairs) {
    if (idx.size() != 2) {
      warnings.push_back(fmt::format("pair_id '{}' has {} sample(s), expected 2",
                                     pair_id, idx.size()));
      continue;
    }
    const NLISample* fwd = &samples[idx[0]];
    const NLISample* rev = &samples[idx[1]];
    if (fwd->direction == Direction::kReverse) std::swap(fwd, rev);
    if (fwd->direction != Direction::kForward ||
        rev->direction != Direction::kReverse) {
      warnings.push_back(fmt::format(
          "pair_id '{}' needs one forward and one reverse sample", pair_id));
      continue;
    }
    if (!preserves_gold(fwd->variant)) continue;
    if (fwd->gold != Label::kEntail || rev->gold != Label::kNoEntail) {
      warnings.push_back(fmt::format(
          "pair_id '{}': forward must be Entail and reverse NoEntail", pair_id));
    }
    if (!(fwd->premise == rev->hypothesis && fwd->hypothesis == rev->premise)) {
      warnings.push_back(fmt::format(
          "pair_id '{}': reverse sample does not swap premise and hypothesis",
          pair_id));
    }
  }
  return warnings;
}

ParsedDataset parse_dataset_text(std::string_view text, TaskVariant variant,
                                 std::string_view source,
                                 const EntityTypeSet& types) {
  ParsedDataset out;
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }
  size_t first = 0;
  while (first < lines.size() && tsv::trim(lines[first]).empty()) ++first;
  if (first == lines.size()) return out;

  if (lines[first] != tsv::kFormatLine) {
    throw DataError(fmt::format("{}:{}: expected header '{}'", source, first + 1,
                                tsv::kFormatLine));
  }
  bool saw_columns = false;
  std::unordered_set<std::string> seen_ids;

  for (size_t ln = first + 1; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    const size_t lineno = ln + 1;
    if (tsv::trim(line).empty() || line.front() == '#') continue;
    auto f = tsv::split(line);
    if (!saw_columns) {
      const bool full = f.size() == kColumns.size();
      const bool minimal = f.size() == kRequiredColumns;
      bool match = full || minimal;
      for (size_t i = 0; match && i < f.size(); ++i) match = f[i] == kColumns[i];
      if (!match) {
        throw DataError(fmt::format("{}:{}: unexpected column header", source,
                                    lineno));
      }
      saw_columns = true;
      continue;
    }
    if (f.size() != kRequiredColumns && f.size() != kColumns.size()) {
      throw DataError(fmt::format("{}:{}: expected {} or {} fields, got {}",
                                  source, lineno, kRequiredColumns,
                                  kColumns.size(), f.size()));
    }
    auto field_error = [&](size_t col, std::string_view why) {
      return DataError(fmt::format("{}:{}: field '{}': {}", source, lineno,
                                   kColumns[col], why));
    };
    for (size_t c : {0u, 1u}) {
      if (tsv::trim(f[c]).empty()) throw field_error(c, "empty");
    }
    const auto direction = parse_direction(f[2]);
    if (!direction) throw field_error(2, "expected forward|reverse");
    const auto gold = parse_label(f[13]);
    if (!gold) throw field_error(13, "expected Entail|NoEntail");

    auto make_slot = [&](size_t surface_col, size_t type_col, SlotId id) {
      if (tsv::trim(f[surface_col]).empty()) {
        throw field_error(surface_col, "empty surface");
      }
      bool unknown = false;
      std::string etype = types.normalize(f[type_col], &unknown);
      if (unknown) {
        ++out.report.unknown_type_count;
        out.report.warnings.push_back(fmt::format(
            "{}:{}: unknown entity type '{}' mapped to '{}'", source, lineno,
            f[type_col], EntityTypeSet::kFallback));
      }
      return ArgumentSlot{f[surface_col], std::move(etype), id};
    };
    auto make_prop = [&](size_t base, size_t hint_col) {
      std::optional<std::string> hint;
      if (f.size() > hint_col && !f[hint_col].empty()) hint = f[hint_col];
      try {
        return Proposition(f[base], make_slot(base + 1, base + 2, SlotId::kX),
                           make_slot(base + 3, base + 4, SlotId::kY),
                           std::move(hint));
      } catch (const DataError& e) {
        throw field_error(base, e.what());
      }
    };
    Proposition premise = make_prop(3, 14);
    Proposition hypothesis = make_prop(8, 15);
    if (!(premise.arg_x() == hypothesis.arg_x()) ||
        !(premise.arg_y() == hypothesis.arg_y())) {
      throw field_error(9,
                        "hypothesis arguments must match premise arguments "
                        "slot by slot");
    }
    if (!seen_ids.insert(f[0]).second) {
      throw DataError(
          fmt::format("{}:{}: duplicate id '{}'", source, lineno, f[0]));
    }
    out.samples.push_back(NLISample{
        .id = f[0],
        .pair_id = f[1],
        .direction = *direction,
        .premise = std::move(premise),
        .hypothesis = std::move(hypothesis),
        .gold = *gold,
        .variant = variant,
    });
  }
  out.report.sample_count = out.samples.size();
  for (auto& w : check_pairing(out.samples)) {
    out.report.warnings.push_back(fmt::format("{}: {}", source, w));
  }
  return out;
}

ParsedDataset parse_dataset(const std::filesystem::path& path,
                            TaskVariant variant, const EntityTypeSet& types) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_text(buf.str(), variant, path.string(), types);
}

std::string serialize_dataset(const std::vector<NLISample>& samples) {
  std::string out;
  out.append(tsv::kFormatLine).push_back('\n');
  out.append(header_line()).push_back('\n');
  for (const auto& s : samples) {
    std::vector<std::string> f = {
        s.id,
        s.pair_id,
        std::string(to_string(s.direction)),
        s.premise.template_text(),
        s.premise.arg_x().surface,
        s.premise.arg_x().etype,
        s.premise.arg_y().surface,
        s.premise.arg_y().etype,
        s.hypothesis.template_text(),
        s.hypothesis.arg_x().surface,
        s.hypothesis.arg_x().etype,
        s.hypothesis.arg_y().surface,
        s.hypothesis.arg_y().etype,
        std::string(to_string(s.gold)),
        s.premise.predicate_lemma_hint().value_or(""),
        s.hypothesis.predicate_lemma_hint().value_or(""),
    };
    for (size_t i = 0; i < f.size(); ++i) {
      if (!tsv::is_cell_safe(f[i])) {
        throw DataError(fmt::format("sample '{}': field '{}' contains a tab or "
                                    "newline",
                                    s.id, kColumns[i]));
      }
    }
    out.append(tsv::join(f)).push_back('\n');
  }
  return out;
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<NLISample>& samples) {
  tsv::write_file(path, serialize_dataset(samples));
}

}  // namespace entailprobe
