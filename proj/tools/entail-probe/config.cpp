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

#include "config.hpp"

#include <algorithm>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/simulator.hpp"

namespace entailprobe::cli {
namespace {

void check_probability(double p, std::string_view field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(fmt::format("{} must be in [0, 1], got {}", field, p));
  }
}

bool valid_backend_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  }) && id.front() != '.';
}

}  // namespace

void RunConfig::bind(CLI::App& app) {
  app.add_option("--dataset", dataset, "Source dataset TSV (variant I)");
  app.add_option("--dev_pool", dev_pool, "Dev dataset: I_RP predicate pool and template selection");
  app.add_option("--entity_index", entity_index, "Entity mention index TSV (I_RA variants)");
  app.add_option("--entity_types", entity_types, "Entity type inventory (default: built-in)");
  app.add_option("--lemma_exceptions", lemma_exceptions, "Lemma exception table (default: built-in)");
  app.add_option("--ngram_index", ngram_index, "Prebuilt n-gram index");
  app.add_option("--ngram_dump", ngram_dump, "Raw n-gram dump to ingest");
  app.add_option("--ngram_totals", ngram_totals, "Yearly total counts for the dump");
  app.add_option("--few_shot", few_shot, "Few-shot example TSV (default: built-in block)");
  app.add_option("--veracity_shots", veracity_shots, "Veracity example TSV (default: built-in)");
  app.add_option("--backend_dir", backend_dir, "Directory holding <backend>.json adapter configs");
  app.add_option("--sim_veracity_table", sim_veracity_table,
                 "statement<TAB>True|Unknown|False table for simulated backends");

  app.add_option("--variants", variants, "Task variants: I I_RP I_TA I_RA_low I_RA_high I_RP_TA");
  app.add_option("--template", template_id, "Prompt template 1-4 or auto");
  app.add_option("--shots", shots, "zero or few4");
  app.add_option("--ignore_veracity", ignore_veracity, "Prepend the ignore-veracity instruction");
  app.add_option("--backends", backends, "Backend ids; ids starting with 'sim' are simulated");
  app.add_option("--seed", seed, "Seed for transforms and simulated backends");
  app.add_option("--year_first", year_first, "First year of the frequency window");
  app.add_option("--year_last", year_last, "Last year of the frequency window");
  app.add_option("--head_verb_fallback", head_verb_fallback,
                 "Look up the head verb when a phrase is absent");
  app.add_option("--veracity", veracity, "Query hypothesis veracity");
  app.add_option("--v_source", v_source, "Veracity for consistency subsets: self or majority");

  app.add_option("--out", out, "Output directory");
  app.add_option("--concurrency", concurrency, "Maximum in-flight backend requests");
  app.add_option("--max_failure_rate", max_failure_rate,
                 "Largest tolerated fraction of failed requests");
  app.add_option("--max_tokens", max_tokens, "Completion length limit");
  app.add_option("--temperature", temperature, "Sampling temperature");
  app.add_option("--cache", cache, "Use the response cache");

  app.add_option("--sim_mode", sim_mode, "veracity_only, frequency_only or mixed");
  app.add_option("--sim_p_vtrue", sim_p_vtrue, "P(A | V=True)");
  app.add_option("--sim_p_vother", sim_p_vother, "P(A | V!=True)");
  app.add_option("--sim_p_fwin", sim_p_fwin, "P(A | F=Win)");
  app.add_option("--sim_p_flose", sim_p_flose, "P(A | F=Lose)");
  app.add_option("--sim_mix_weight", sim_mix_weight, "Veracity weight in mixed mode");
  app.add_option("--sim_p_true", sim_p_true, "Share of synthetic statements judged True");
  app.add_option("--sim_p_false", sim_p_false, "Share of synthetic statements judged False");
}

void RunConfig::validate() {
  parsed_variants.clear();
  for (const auto& v : variants) {
    const auto parsed = parse_variant(v);
    if (!parsed) throw ConfigError(fmt::format("variants: unknown variant '{}'", v));
    if (std::find(parsed_variants.begin(), parsed_variants.end(), *parsed) ==
        parsed_variants.end()) {
      parsed_variants.push_back(*parsed);
    }
  }
  if (parsed_variants.empty()) throw ConfigError("variants: at least one variant is required");
  if (template_id != "auto" &&
      (template_id.size() != 1 || template_id[0] < '1' || template_id[0] > '4')) {
    throw ConfigError(fmt::format("template: expected 1-4 or auto, got '{}'", template_id));
  }
  if (shots != "zero" && shots != "few4") {
    throw ConfigError(fmt::format("shots: expected zero or few4, got '{}'", shots));
  }
  if (backends.empty()) throw ConfigError("backends: at least one backend is required");
  for (const auto& b : backends) {
    if (!valid_backend_id(b)) throw ConfigError(fmt::format("backends: invalid id '{}'", b));
  }
  if (std::set<std::string>(backends.begin(), backends.end()).size() != backends.size()) {
    throw ConfigError("backends: duplicate id");
  }
  if (year_first > year_last) {
    throw ConfigError(fmt::format("year_first {} is after year_last {}", year_first, year_last));
  }
  if (v_source != "self" && v_source != "majority") {
    throw ConfigError(fmt::format("v_source: expected self or majority, got '{}'", v_source));
  }
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  check_probability(max_failure_rate, "max_failure_rate");
  if (max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (!parse_bias_mode(sim_mode)) {
    throw ConfigError(fmt::format("sim_mode: unknown mode '{}'", sim_mode));
  }
  check_probability(sim_p_vtrue, "sim_p_vtrue");
  check_probability(sim_p_vother, "sim_p_vother");
  check_probability(sim_p_fwin, "sim_p_fwin");
  check_probability(sim_p_flose, "sim_p_flose");
  check_probability(sim_mix_weight, "sim_mix_weight");
  check_probability(sim_p_true, "sim_p_true");
  check_probability(sim_p_false, "sim_p_false");
  if (sim_p_true + sim_p_false > 1.0) throw ConfigError("sim_p_true + sim_p_false must be <= 1");
  if (out.empty()) throw ConfigError("out: output directory is required");
}

Seed RunConfig::require_seed(std::string_view why) const {
  if (!seed) throw ConfigError(fmt::format("seed: required for {}", why));
  return Seed{*seed};
}

bool RunConfig::wants(TaskVariant v) const {
  return std::find(parsed_variants.begin(), parsed_variants.end(), v) != parsed_variants.end();
}

std::map<std::string, std::string> RunConfig::manifest_parameters() const {
  std::map<std::string, std::string> p = {
      {"year_first", std::to_string(year_first)},
      {"year_last", std::to_string(year_last)},
      {"head_verb_fallback", head_verb_fallback ? "true" : "false"},
      {"max_tokens", std::to_string(max_tokens)},
      {"temperature", fmt::format("{}", temperature)},
      {"max_failure_rate", fmt::format("{}", max_failure_rate)},
      {"veracity", veracity ? "true" : "false"},
  };
  const bool any_sim = std::any_of(backends.begin(), backends.end(),
                                   [](const auto& b) { return is_simulated_backend(b); });
  if (any_sim) {
    p["sim_mode"] = sim_mode;
    p["sim_p_vtrue"] = fmt::format("{}", sim_p_vtrue);
    p["sim_p_vother"] = fmt::format("{}", sim_p_vother);
    p["sim_p_fwin"] = fmt::format("{}", sim_p_fwin);
    p["sim_p_flose"] = fmt::format("{}", sim_p_flose);
    p["sim_mix_weight"] = fmt::format("{}", sim_mix_weight);
    p["sim_p_true"] = fmt::format("{}", sim_p_true);
    p["sim_p_false"] = fmt::format("{}", sim_p_false);
  }
  return p;
}

std::map<std::string, std::filesystem::path> RunConfig::named_inputs() const {
  std::map<std::string, std::filesystem::path> m;
  const std::pair<const char*, const std::filesystem::path*> all[] = {
      {"config", &config_path},          {"dataset", &dataset},
      {"dev_pool", &dev_pool},           {"entity_index", &entity_index},
      {"entity_types", &entity_types},   {"lemma_exceptions", &lemma_exceptions},
      {"ngram_index", &ngram_index},     {"ngram_dump", &ngram_dump},
      {"ngram_totals", &ngram_totals},   {"few_shot", &few_shot},
      {"veracity_shots", &veracity_shots}, {"sim_veracity_table", &sim_veracity_table},
  };
  for (const auto& [name, path] : all) {
    if (!path->empty()) m[name] = *path;
  }
  for (const auto& b : backends) {
    if (is_simulated_backend(b)) continue;
    m["backend:" + b] = backend_dir / (b + ".json");
  }
  return m;
}

void require_file(const std::filesystem::path& path, std::string_view field,
                  std::string_view why) {
  if (path.empty()) throw ConfigError(fmt::format("{}: required for {}", field, why));
  if (!std::filesystem::is_regular_file(path)) {
    throw ConfigError(fmt::format("{}: file '{}' does not exist", field, path.string()));
  }
}

bool is_simulated_backend(std::string_view id) { return id.starts_with("sim"); }

}  // namespace entailprobe::cli
