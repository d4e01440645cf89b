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

// Prompt rendering and answer parsing.
//
// Inference prompt layout (lines joined by '\n', no trailing newline):
//
//   [description line, blank line]            zero-shot or ignore-veracity
//   per few-shot example:
//     <template(premise, hypothesis)>
//     A) Entailment
//     B) Neutral
//     C) Contradiction
//     Answer: <L>) <Option>. <explanation>
//   <template(query premise, query hypothesis)>
//   A) Entailment
//   B) Neutral
//   C) Contradiction
//   Answer:
//
// Veracity prompts use the same shape with "<statement>." and the options
// True / Unknown / False.

#ifndef ENTAILPROBE_PROMPT_HPP_
#define ENTAILPROBE_PROMPT_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entailprobe/dataset.hpp"

namespace entailprobe {

enum class PromptKind { kInference, kVeracity };
enum class ParsedChoice { kA, kB, kC, kUnparsed };

std::string_view to_string(PromptKind k);   // "inference" / "veracity"
std::string_view to_string(ParsedChoice c);  // "A" / "B" / "C" / "Unparsed"
std::optional<PromptKind> parse_prompt_kind(std::string_view s);
std::optional<ParsedChoice> parse_choice_name(std::string_view s);

// A model's hypothesis-only judgement. A -> True, B -> Unknown, C -> False.
enum class Veracity { kTrue, kUnknown, kFalse };

std::string_view to_string(Veracity v);  // "True" / "Unknown" / "False"
std::optional<Veracity> parse_veracity(std::string_view s);
// nullopt for Unparsed.
std::optional<Veracity> veracity_from_choice(ParsedChoice c);
ParsedChoice choice_for(Veracity v);

inline constexpr std::string_view kZeroShotDescription =
    "Please check the entailments between the following statements.";
inline constexpr std::string_view kIgnoreVeracityDescription =
    "Please check the entailments between the following hypothetical "
    "statements. Ignore the veracity of these statements.";

struct PromptTemplate {
  int id = 1;
  // "{P}" and "{H}" mark the premise and hypothesis.
  std::string_view pattern;
};

// 1 "If {P}, then {H}."   2 "{P}, so {H}."   3 "{P} entails {H}."
// 4 "{P}, which means that {H}."
const std::array<PromptTemplate, 4>& prompt_templates();
// Throws ConfigError for ids outside 1..4.
const PromptTemplate& prompt_template(int id);

std::string apply_template(const PromptTemplate& t, std::string_view premise,
                           std::string_view hypothesis);

struct FewShotExample {
  std::string premise;
  std::string hypothesis;
  ParsedChoice answer = ParsedChoice::kA;
  std::string explanation;
};

struct FewShotBlock {
  std::vector<FewShotExample> examples;

  // The four-example block (Google/Youtube, John/mall) with explanations.
  static const FewShotBlock& default_inference();
  // TSV: #format line, header "premise hypothesis answer explanation".
  static FewShotBlock load(const std::filesystem::path& path);
};

struct VeracityExample {
  std::string statement;
  ParsedChoice answer = ParsedChoice::kA;
};

struct VeracityShots {
  std::vector<VeracityExample> examples;

  // Google bought Youtube -> A, Yoshua Bengio likes oak trees -> B,
  // The sun rises from the west -> C.
  static const VeracityShots& default_shots();
  // TSV: #format line, header "statement answer".
  static VeracityShots load(const std::filesystem::path& path);
};

struct RenderedPrompt {
  std::string text;
  PromptKind kind = PromptKind::kInference;
  std::string sample_id;
  TaskVariant variant = TaskVariant::kI;  // of the sample; kI for veracity
  int template_id = 0;                    // 0 for veracity prompts
  int shots = 0;
  bool instructed_ignore_veracity = false;
};

// `shots` == nullptr renders the zero-shot prompt.
RenderedPrompt render_inference_prompt(const NLISample& sample,
                                       const PromptTemplate& t,
                                       const FewShotBlock* shots,
                                       bool ignore_veracity_instruction);

RenderedPrompt render_veracity_prompt(
    const Proposition& hypothesis,
    const VeracityShots& shots = VeracityShots::default_shots());

// Renders a veracity prompt for an already rendered statement.
RenderedPrompt render_veracity_prompt_text(
    std::string_view statement,
    const VeracityShots& shots = VeracityShots::default_shots());

// Finds the first option letter after the last "Answer:" marker (or from the
// start when there is none). Uppercase A/B/C count anywhere as a standalone
// token, optionally wrapped as "(A)" or followed by ")", ".", ":" or ",";
// a lowercase letter counts only as the first token. Without a letter, the
// first option word of `kind` is used. Never throws.
ParsedChoice parse_answer(std::string_view raw, PromptKind kind);

}  // namespace entailprobe

#endif  // ENTAILPROBE_PROMPT_HPP_
