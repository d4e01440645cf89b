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

// entail-probe transform|freq|run|analyze|all --config <path> [overrides]
//
// Exit codes: 0 ok, 2 configuration, 3 data, 4 backend.

#include <iostream>

#include <CLI11.hpp>

#include "entailprobe/error.hpp"
#include "pipeline.hpp"

namespace {

using entailprobe::cli::RunConfig;
using Stage = void (*)(const RunConfig&, std::ostream&);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probe LLM entailment judgements for veracity and frequency bias",
               "entail-probe"};
  app.set_version_flag("--version", std::string(ENTAILPROBE_VERSION));
  app.set_config("--config", "", "TOML config file; flags override its values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.bind(app);

  const std::pair<const char*, std::pair<const char*, Stage>> stages[] = {
      {"transform", {"Write the task variant datasets", entailprobe::cli::cmd_transform}},
      {"freq", {"Classify samples by predicate frequency", entailprobe::cli::cmd_freq}},
      {"run", {"Query backends and write predictions", entailprobe::cli::cmd_run}},
      {"analyze", {"Build the report from predictions", entailprobe::cli::cmd_analyze}},
      {"all", {"transform, freq, run and analyze in sequence", entailprobe::cli::cmd_all}},
  };
  Stage chosen = nullptr;
  for (const auto& [name, entry] : stages) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->fallthrough();
    const Stage fn = entry.second;
    sub->callback([&chosen, fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(entailprobe::ExitCode::kConfig);
  }

  try {
    if (auto* opt = app.get_config_ptr(); opt && opt->count() > 0) {
      cfg.config_path = opt->as<std::string>();
    }
    cfg.validate();
    chosen(cfg, std::cerr);
  } catch (const entailprobe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(entailprobe::ExitCode::kData);
  }
  return 0;
}
