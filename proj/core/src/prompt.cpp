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

#include "entailprobe/prompt.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

constexpr std::array<std::string_view, 3> kInferenceOptions = {
    "Entailment", "Neutral", "Contradiction"};
constexpr std::array<std::string_view, 3> kVeracityOptions = {"True", "Unknown",
                                                              "False"};

const std::array<std::string_view, 3>& options_for(PromptKind kind) {
  return kind == PromptKind::kInference ? kInferenceOptions : kVeracityOptions;
}

size_t option_index(ParsedChoice c) {
  switch (c) {
    case ParsedChoice::kA: return 0;
    case ParsedChoice::kB: return 1;
    case ParsedChoice::kC: return 2;
    case ParsedChoice::kUnparsed: break;
  }
  throw ConfigError("few-shot answers must be A, B or C");
}

void append_options(std::string& out, PromptKind kind) {
  const auto& opts = options_for(kind);
  out.append(fmt::format("A) {}\nB) {}\nC) {}\n", opts[0], opts[1], opts[2]));
}

std::string answer_line(PromptKind kind, ParsedChoice c,
                        std::string_view explanation) {
  const size_t i = option_index(c);
  std::string line = fmt::format("Answer: {}) {}.", "ABC"[i], options_for(kind)[i]);
  if (!explanation.empty()) line.append(" ").append(explanation);
  return line;
}

std::optional<ParsedChoice> choice_from_letter(char c) {
  switch (c) {
    case 'A': case 'a': return ParsedChoice::kA;
    case 'B': case 'b': return ParsedChoice::kB;
    case 'C': case 'c': return ParsedChoice::kC;
    default: return std::nullopt;
  }
}

std::vector<std::string> data_rows(const std::filesystem::path& path,
                                   size_t fields,
                                   std::vector<std::vector<std::string>>& rows) {
  const auto lines = tsv::read_lines(path);
  bool saw_format = false;
  bool saw_header = false;
  std::vector<std::string> header;
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (tsv::trim(line).empty()) continue;
    if (!saw_format) {
      if (line != tsv::kFormatLine) {
        throw DataError(fmt::format("{}:{}: expected header '{}'",
                                    path.string(), i + 1, tsv::kFormatLine));
      }
      saw_format = true;
      continue;
    }
    if (line.front() == '#') continue;
    auto f = tsv::split(line);
    if (!saw_header) {
      header = std::move(f);
      saw_header = true;
      continue;
    }
    if (f.size() != fields) {
      throw DataError(fmt::format("{}:{}: expected {} fields", path.string(),
                                  i + 1, fields));
    }
    rows.push_back(std::move(f));
  }
  return header;
}

ParsedChoice parse_shot_answer(const std::filesystem::path& path,
                               std::string_view s) {
  const auto c = parse_choice_name(s);
  if (!c || *c == ParsedChoice::kUnparsed) {
    throw DataError(fmt::format("{}: answer must be A, B or C, got '{}'",
                                path.string(), s));
  }
  return *c;
}

}  // namespace

std::string_view to_string(PromptKind k) {
  return k == PromptKind::kInference ? "inference" : "veracity";
}

std::string_view to_string(ParsedChoice c) {
  switch (c) {
    case ParsedChoice::kA: return "A";
    case ParsedChoice::kB: return "B";
    case ParsedChoice::kC: return "C";
    case ParsedChoice::kUnparsed: return "Unparsed";
  }
  return "?";
}

std::optional<PromptKind> parse_prompt_kind(std::string_view s) {
  if (s == "inference") return PromptKind::kInference;
  if (s == "veracity") return PromptKind::kVeracity;
  return std::nullopt;
}

std::optional<ParsedChoice> parse_choice_name(std::string_view s) {
  if (s == "A") return ParsedChoice::kA;
  if (s == "B") return ParsedChoice::kB;
  if (s == "C") return ParsedChoice::kC;
  if (s == "Unparsed") return ParsedChoice::kUnparsed;
  return std::nullopt;
}

std::string_view to_string(Veracity v) {
  switch (v) {
    case Veracity::kTrue: return "True";
    case Veracity::kUnknown: return "Unknown";
    case Veracity::kFalse: return "False";
  }
  return "?";
}

std::optional<Veracity> parse_veracity(std::string_view s) {
  if (s == "True") return Veracity::kTrue;
  if (s == "Unknown") return Veracity::kUnknown;
  if (s == "False") return Veracity::kFalse;
  return std::nullopt;
}

std::optional<Veracity> veracity_from_choice(ParsedChoice c) {
  switch (c) {
    case ParsedChoice::kA: return Veracity::kTrue;
    case ParsedChoice::kB: return Veracity::kUnknown;
    case ParsedChoice::kC: return Veracity::kFalse;
    case ParsedChoice::kUnparsed: break;
  }
  return std::nullopt;
}

ParsedChoice choice_for(Veracity v) {
  switch (v) {
    case Veracity::kTrue: return ParsedChoice::kA;
    case Veracity::kUnknown: return ParsedChoice::kB;
    case Veracity::kFalse: return ParsedChoice::kC;
  }
  return ParsedChoice::kUnparsed;
}

const std::array<PromptTemplate, 4>& prompt_templates() {
  static const std::array<PromptTemplate, 4> kTemplates = {{
      {1, "If {P}, then {H}."},
      {2, "{P}, so {H}."},
      {3, "{P} entails {H}."},
      {4, "{P}, which means that {H}."},
  }};
  return kTemplates;
}

const PromptTemplate& prompt_template(int id) {
  if (id < 1 || id > 4) {
    throw ConfigError(fmt::format("prompt template id {} is not in 1..4", id));
  }
  return prompt_templates()[static_cast<size_t>(id - 1)];
}

std::string apply_template(const PromptTemplate& t, std::string_view premise,
                           std::string_view hypothesis) {
  std::string out;
  const std::string_view p = t.pattern;
  for (size_t i = 0; i < p.size();) {
    if (p.substr(i).starts_with("{P}")) {
      out.append(premise);
      i += 3;
    } else if (p.substr(i).starts_with("{H}")) {
      out.append(hypothesis);
      i += 3;
    } else {
      out.push_back(p[i++]);
    }
  }
  return out;
}

const FewShotBlock& FewShotBlock::default_inference() {
  static const FewShotBlock kBlock{{
      {"Google bought Youtube", "Google owns Youtube", ParsedChoice::kA,
       "Owning is a consequence of buying."},
      {"Google owns Youtube", "Google bought Youtube", ParsedChoice::kB,
       "Owning does not imply buying, the ownership may come from other "
       "means."},
      {"John went to the mall", "John drove to the mall", ParsedChoice::kB,
       "John may have gone to the mall by other means."},
      {"John drove to the mall", "John went to the mall", ParsedChoice::kA,
       "Driving is a means of going to the mall."},
  }};
  return kBlock;
}

FewShotBlock FewShotBlock::load(const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> rows;
  data_rows(path, 4, rows);
  FewShotBlock block;
  for (auto& r : rows) {
    block.examples.push_back(
        {r[0], r[1], parse_shot_answer(path, r[2]), r[3]});
  }
  return block;
}

const VeracityShots& VeracityShots::default_shots() {
  static const VeracityShots kShots{{
      {"Google bought Youtube", ParsedChoice::kA},
      {"Yoshua Bengio likes oak trees", ParsedChoice::kB},
      {"The sun rises from the west", ParsedChoice::kC},
  }};
  return kShots;
}

VeracityShots VeracityShots::load(const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> rows;
  data_rows(path, 2, rows);
  VeracityShots shots;
  for (auto& r : rows) {
    shots.examples.push_back({r[0], parse_shot_answer(path, r[1])});
  }
  return shots;
}

RenderedPrompt render_inference_prompt(const NLISample& sample,
                                       const PromptTemplate& t,
                                       const FewShotBlock* shots,
                                       bool ignore_veracity_instruction) {
  std::string text;
  if (ignore_veracity_instruction) {
    text.append(kIgnoreVeracityDescription).append("\n\n");
  } else if (shots == nullptr) {
    text.append(kZeroShotDescription).append("\n\n");
  }
  if (shots) {
    for (const auto& ex : shots->examples) {
      text.append(apply_template(t, ex.premise, ex.hypothesis)).push_back('\n');
      append_options(text, PromptKind::kInference);
      text.append(answer_line(PromptKind::kInference, ex.answer, ex.explanation))
          .push_back('\n');
    }
  }
  text.append(apply_template(t, sample.premise.render(),
                             sample.hypothesis.render()))
      .push_back('\n');
  append_options(text, PromptKind::kInference);
  text.append("Answer:");
  return RenderedPrompt{
      .text = std::move(text),
      .kind = PromptKind::kInference,
      .sample_id = sample.id,
      .variant = sample.variant,
      .template_id = t.id,
      .shots = shots ? static_cast<int>(shots->examples.size()) : 0,
      .instructed_ignore_veracity = ignore_veracity_instruction,
  };
}

RenderedPrompt render_veracity_prompt_text(std::string_view statement,
                                           const VeracityShots& shots) {
  std::string text;
  for (const auto& ex : shots.examples) {
    text.append(ex.statement).append(".\n");
    append_options(text, PromptKind::kVeracity);
    text.append(answer_line(PromptKind::kVeracity, ex.answer, "")).push_back('\n');
  }
  text.append(statement).append(".\n");
  append_options(text, PromptKind::kVeracity);
  text.append("Answer:");
  return RenderedPrompt{
      .text = std::move(text),
      .kind = PromptKind::kVeracity,
      .sample_id = std::string(statement),
      .variant = TaskVariant::kI,
      .template_id = 0,
      .shots = static_cast<int>(shots.examples.size()),
      .instructed_ignore_veracity = false,
  };
}

RenderedPrompt render_veracity_prompt(const Proposition& hypothesis,
                                      const VeracityShots& shots) {
  return render_veracity_prompt_text(hypothesis.render(), shots);
}

ParsedChoice parse_answer(std::string_view raw, PromptKind kind) {
  static constexpr std::string_view kMarker = "Answer:";
  std::string_view region = raw;
  if (const size_t pos = raw.rfind(kMarker); pos != std::string_view::npos) {
    region = raw.substr(pos + kMarker.size());
  }

  // Tokenize on whitespace; inspect each token for a standalone letter.
  bool first_token = true;
  size_t i = 0;
  while (i < region.size()) {
    while (i < region.size() && std::isspace(static_cast<unsigned char>(region[i]))) ++i;
    if (i >= region.size()) break;
    size_t j = i;
    while (j < region.size() && !std::isspace(static_cast<unsigned char>(region[j]))) ++j;
    std::string_view tok = region.substr(i, j - i);
    if (tok.size() >= 3 && tok.front() == '(' && tok[2] == ')') {
      tok = tok.substr(1);
    }
    if (!tok.empty()) {
      const auto letter = choice_from_letter(tok.front());
      const bool standalone =
          tok.size() == 1 ||
          (tok.size() >= 2 && (tok[1] == ')' || tok[1] == '.' ||
                               tok[1] == ':' || tok[1] == ','));
      const bool upper = tok.front() >= 'A' && tok.front() <= 'C';
      if (letter && standalone && (upper || first_token)) return *letter;
    }
    first_token = false;
    i = j;
  }

  const auto& opts = options_for(kind);
  size_t best = std::string_view::npos;
  ParsedChoice best_choice = ParsedChoice::kUnparsed;
  for (size_t k = 0; k < opts.size(); ++k) {
    const size_t pos = region.find(opts[k]);
    if (pos < best) {
      best = pos;
      best_choice = static_cast<ParsedChoice>(k);
    }
  }
  return best_choice;
}

}  // namespace entailprobe
