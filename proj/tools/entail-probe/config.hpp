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

// Run configuration shared by every subcommand. Each field is both a TOML
// key in the --config file and a --flag of the same name; flags win.

#ifndef ENTAILPROBE_TOOLS_CONFIG_HPP_
#define ENTAILPROBE_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entailprobe/dataset.hpp"
#include "entailprobe/rng.hpp"

namespace CLI {
class App;
}

namespace entailprobe::cli {

struct RunConfig {
  std::filesystem::path config_path;

  // Inputs.
  std::filesystem::path dataset;
  std::filesystem::path dev_pool;
  std::filesystem::path entity_index;
  std::filesystem::path entity_types;
  std::filesystem::path lemma_exceptions;
  std::filesystem::path ngram_index;
  std::filesystem::path ngram_dump;
  std::filesystem::path ngram_totals;
  std::filesystem::path few_shot;
  std::filesystem::path veracity_shots;
  std::filesystem::path backend_dir = "backends";
  std::filesystem::path sim_veracity_table;

  // Experiment.
  std::vector<std::string> variants = {"I"};
  std::string template_id = "1";  // "1".."4" or "auto"
  std::string shots = "few4";     // "zero" or "few4"
  bool ignore_veracity = false;
  std::vector<std::string> backends = {"sim"};
  std::optional<uint64_t> seed;
  int year_first = 1950;
  int year_last = 2019;
  bool head_verb_fallback = true;
  bool veracity = true;
  std::string v_source = "self";  // "self" or "majority"

  // Querying.
  std::filesystem::path out = "out";
  int concurrency = 4;
  double max_failure_rate = 0.0;
  int max_tokens = 16;
  double temperature = 0.0;
  bool cache = true;

  // Simulated backends (ids starting with "sim").
  std::string sim_mode = "veracity_only";
  double sim_p_vtrue = 0.5;
  double sim_p_vother = 0.5;
  double sim_p_fwin = 0.5;
  double sim_p_flose = 0.5;
  double sim_mix_weight = 0.5;
  double sim_p_true = 0.5;
  double sim_p_false = 0.25;

  // Parsed and checked forms, filled by validate().
  std::vector<TaskVariant> parsed_variants;

  // Registers every field as a configurable option on `app`.
  void bind(CLI::App& app);
  // Checks values that do not depend on the subcommand. Throws ConfigError
  // naming the offending field.
  void validate();

  Seed require_seed(std::string_view why) const;
  bool wants(TaskVariant v) const;
  // Non-path parameters recorded in the run manifest.
  std::map<std::string, std::string> manifest_parameters() const;
  // Named external inputs that are set, for manifest digests.
  std::map<std::string, std::filesystem::path> named_inputs() const;
};

// Throws ConfigError when `path` is empty or missing.
void require_file(const std::filesystem::path& path, std::string_view field,
                  std::string_view why);

bool is_simulated_backend(std::string_view id);

}  // namespace entailprobe::cli

#endif  // ENTAILPROBE_TOOLS_CONFIG_HPP_
