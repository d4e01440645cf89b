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

#include "entailprobe/simulator.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "entailprobe/error.hpp"

namespace entailprobe {
namespace {

void check_probability(double p, std::string_view name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(fmt::format("{} must be in [0, 1], got {}", name, p));
  }
}

Veracity table_lookup(const BiasParams& params, std::string_view statement) {
  const auto it = params.veracity_table.find(statement);
  if (it == params.veracity_table.end()) {
    throw DataError(fmt::format("veracity table has no entry for hypothesis '{}'",
                                statement));
  }
  return it->second;
}

ModelResponse veracity_response(const BiasParams& params, std::string_view statement,
                                std::string_view backend_id) {
  const Veracity v = table_lookup(params, statement);
  KeyedRng rng(params.seed, stream_key({"sim", "veracity", statement}));
  const ParsedChoice c = choice_for(v);
  return ModelResponse{
      .raw_text = fmt::format(" {}) {}.", to_string(c), to_string(v)),
      .choice = c,
      .s_tok = 0.95 + 0.1 * (rng.next_double() - 0.5),
      .backend_id = std::string(backend_id),
      .cached = false,
  };
}

}  // namespace

std::string_view to_string(BiasMode m) {
  switch (m) {
    case BiasMode::kVeracityOnly: return "veracity_only";
    case BiasMode::kFrequencyOnly: return "frequency_only";
    case BiasMode::kMixed: return "mixed";
  }
  return "?";
}

std::optional<BiasMode> parse_bias_mode(std::string_view s) {
  if (s == "veracity_only") return BiasMode::kVeracityOnly;
  if (s == "frequency_only") return BiasMode::kFrequencyOnly;
  if (s == "mixed") return BiasMode::kMixed;
  return std::nullopt;
}

void BiasParams::validate() const {
  check_probability(p_entail_given_vtrue, "p_entail_given_vtrue");
  check_probability(p_entail_given_vother, "p_entail_given_vother");
  check_probability(p_entail_given_fwin, "p_entail_given_fwin");
  check_probability(p_entail_given_flose, "p_entail_given_flose");
  check_probability(mix_weight, "mix_weight");
}

std::map<std::string, Veracity, std::less<>> synthetic_veracity_table(
    std::span<const std::string> statements, Seed seed, double p_true,
    double p_false) {
  check_probability(p_true, "p_true");
  check_probability(p_false, "p_false");
  if (p_true + p_false > 1.0) throw ConfigError("p_true + p_false must be <= 1");
  std::map<std::string, Veracity, std::less<>> table;
  for (const auto& s : statements) {
    if (table.count(s)) continue;
    KeyedRng rng(seed, stream_key({"sim", "table", s}));
    const double u = rng.next_double();
    table.emplace(s, u < p_true              ? Veracity::kTrue
                     : u < p_true + p_false ? Veracity::kFalse
                                            : Veracity::kUnknown);
  }
  return table;
}

double entail_probability(const BiasParams& params, const NLISample& sample,
                          const std::optional<FrequencyVerdict>& f,
                          std::string_view veracity_statement) {
  double p_v = 0.0;
  double p_f = 0.0;
  if (params.uses_veracity()) {
    const Veracity v = veracity_statement.empty()
                           ? table_lookup(params, sample.hypothesis.render())
                           : table_lookup(params, veracity_statement);
    p_v = v == Veracity::kTrue ? params.p_entail_given_vtrue
                               : params.p_entail_given_vother;
  }
  if (params.uses_frequency()) {
    if (!f) {
      throw DataError(fmt::format("no frequency verdict for sample '{}'", sample.id));
    }
    switch (f->f) {
      case FrequencyClass::kWin: p_f = params.p_entail_given_fwin; break;
      case FrequencyClass::kLose: p_f = params.p_entail_given_flose; break;
      case FrequencyClass::kDraw:
        p_f = 0.5 * (params.p_entail_given_fwin + params.p_entail_given_flose);
        break;
    }
  }
  switch (params.mode) {
    case BiasMode::kVeracityOnly: return p_v;
    case BiasMode::kFrequencyOnly: return p_f;
    case BiasMode::kMixed: return params.mix_weight * p_v + (1.0 - params.mix_weight) * p_f;
  }
  return p_v;
}

ModelResponse simulate_response(const BiasParams& params, const NLISample& sample,
                                const std::optional<FrequencyVerdict>& f,
                                PromptKind kind, std::string_view backend_id,
                                std::string_view veracity_statement) {
  if (kind == PromptKind::kVeracity) {
    return veracity_statement.empty()
               ? veracity_response(params, sample.hypothesis.render(), backend_id)
               : veracity_response(params, veracity_statement, backend_id);
  }
  const double p = entail_probability(params, sample, f, veracity_statement);
  KeyedRng rng(params.seed,
               stream_key({"sim", "inference", to_string(sample.variant), sample.id}));
  const bool entail = rng.next_double() < p;
  const double q = entail ? p : 1.0 - p;
  const double s_tok = std::clamp(q + 0.1 * (rng.next_double() - 0.5), 0.001, 1.0);
  return ModelResponse{
      .raw_text = entail ? " A) Entailment." : " B) Neutral.",
      .choice = entail ? ParsedChoice::kA : ParsedChoice::kB,
      .s_tok = s_tok,
      .backend_id = std::string(backend_id),
      .cached = false,
  };
}

SimulatedBackend::SimulatedBackend(std::string id, BiasParams params)
    : id_(std::move(id)), params_(std::move(params)) {
  params_.validate();
}

void SimulatedBackend::register_samples(
    TaskVariant variant, std::span<const NLISample> samples,
    const std::map<std::string, FrequencyVerdict>& verdicts,
    const std::map<std::string, std::string>* veracity_statements) {
  for (const auto& s : samples) {
    Context ctx{s, std::nullopt, {}};
    if (const auto it = verdicts.find(s.id); it != verdicts.end()) ctx.f = it->second;
    if (veracity_statements) {
      if (const auto it = veracity_statements->find(s.id); it != veracity_statements->end()) {
        ctx.statement = it->second;
      }
    }
    contexts_.insert_or_assign({variant, s.id}, std::move(ctx));
  }
}

RawCompletion SimulatedBackend::complete(const BackendRequest& req) {
  ModelResponse r;
  if (req.prompt.kind == PromptKind::kVeracity) {
    r = veracity_response(params_, req.prompt.sample_id, id_);
  } else {
    const auto it = contexts_.find({req.prompt.variant, req.prompt.sample_id});
    if (it == contexts_.end()) {
      throw BackendError(fmt::format("simulated backend '{}' has no sample '{}' ({})", id_,
                                     req.prompt.sample_id, to_string(req.prompt.variant)));
    }
    r = simulate_response(params_, it->second.sample, it->second.f,
                          PromptKind::kInference, id_, it->second.statement);
  }
  return RawCompletion{std::move(r.raw_text), r.s_tok};
}

}  // namespace entailprobe
