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

// Deterministic biased responder for desk-scale verification.
//
// Inference prompts answer "A) Entailment" with probability p and
// "B) Neutral" otherwise, where p depends on the mode:
//
//   veracity_only   p_vtrue if table[H] == True else p_vother
//   frequency_only  p_fwin for Win, p_flose for Lose, their mean for Draw
//   mixed           mix_weight * p_veracity + (1 - mix_weight) * p_frequency
//
// s_tok = clamp(q + 0.1 * (u - 0.5), 0.001, 1) where q = p for an A answer
// and 1 - p for a B answer, and u is uniform in [0, 1).
//
// Veracity prompts return the table's value ("A) True", "B) Unknown",
// "C) False") with s_tok = 0.95 + 0.1 * (u - 0.5).
//
// Draws come from KeyedRng(seed, "sim" / kind / variant / sample_id), so a
// sample's response never depends on which other samples are simulated.

#ifndef ENTAILPROBE_SIMULATOR_HPP_
#define ENTAILPROBE_SIMULATOR_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entailprobe/backend.hpp"
#include "entailprobe/dataset.hpp"
#include "entailprobe/frequency.hpp"
#include "entailprobe/rng.hpp"

namespace entailprobe {

enum class BiasMode { kVeracityOnly, kFrequencyOnly, kMixed };

std::string_view to_string(BiasMode m);  // "veracity_only" / ...
std::optional<BiasMode> parse_bias_mode(std::string_view s);

struct BiasParams {
  double p_entail_given_vtrue = 0.5;
  double p_entail_given_vother = 0.5;
  double p_entail_given_fwin = 0.5;
  double p_entail_given_flose = 0.5;
  BiasMode mode = BiasMode::kVeracityOnly;
  double mix_weight = 0.5;
  // Rendered hypothesis -> veracity.
  std::map<std::string, Veracity, std::less<>> veracity_table;
  Seed seed{};

  // Throws ConfigError for probabilities outside [0, 1].
  void validate() const;
  bool uses_veracity() const { return mode != BiasMode::kFrequencyOnly; }
  bool uses_frequency() const { return mode != BiasMode::kVeracityOnly; }
};

// Assigns each distinct statement True with probability p_true, False with
// probability p_false and Unknown otherwise, keyed by the statement text.
std::map<std::string, Veracity, std::less<>> synthetic_veracity_table(
    std::span<const std::string> statements, Seed seed, double p_true,
    double p_false);

// P(A) for one inference prompt. The veracity table is consulted for
// `veracity_statement`, or for the rendered hypothesis when it is empty.
// Throws DataError when the mode needs a veracity entry or frequency verdict
// that is missing.
double entail_probability(const BiasParams& params, const NLISample& sample,
                          const std::optional<FrequencyVerdict>& f,
                          std::string_view veracity_statement = {});

ModelResponse simulate_response(const BiasParams& params,
                                const NLISample& sample,
                                const std::optional<FrequencyVerdict>& f,
                                PromptKind kind,
                                std::string_view backend_id = "simulated",
                                std::string_view veracity_statement = {});

class SimulatedBackend : public Backend {
 public:
  SimulatedBackend(std::string id, BiasParams params);

  // Inference requests are matched by (variant, sample id). Register every
  // sample before querying; registration is not thread-safe.
  // `veracity_statements` maps sample ids to the statement whose veracity
  // drives the sample (typically the untransformed hypothesis).
  void register_samples(
      TaskVariant variant, std::span<const NLISample> samples,
      const std::map<std::string, FrequencyVerdict>& verdicts,
      const std::map<std::string, std::string>* veracity_statements = nullptr);

  const std::string& id() const override { return id_; }
  // Veracity requests are answered from the table by statement text, which
  // render_veracity_prompt stores as the prompt's sample id.
  RawCompletion complete(const BackendRequest& req) override;
  bool per_sample() const override { return true; }

  const BiasParams& params() const { return params_; }

 private:
  struct Context {
    NLISample sample;
    std::optional<FrequencyVerdict> f;
    std::string statement;
  };

  std::string id_;
  BiasParams params_;
  std::map<std::pair<TaskVariant, std::string>, Context> contexts_;
};

}  // namespace entailprobe

#endif  // ENTAILPROBE_SIMULATOR_HPP_
