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

// Pipeline stages behind the entail-probe subcommands.
//
// Output layout under RunConfig::out:
//
//   datasets/<variant>.tsv            transformed datasets (I is always written)
//   datasets/exclusions.tsv           samples a transform could not handle
//   frequency/<variant>.tsv           F verdicts per sample
//   frequency/ngram.ngix              index built from a raw dump, if any
//   cache/<backend>.jsonl             response cache
//   predictions/run_info.json         template choice and failure counts
//   predictions/<backend>/<variant>.tsv
//   predictions/<backend>/veracity.tsv  one row per unique hypothesis
//   predictions/<backend>/failures.tsv
//   report/                           see entailprobe/report.hpp
//
// Stages throw entailprobe::Error subclasses; the exit code comes from the
// exception type.

#ifndef ENTAILPROBE_TOOLS_PIPELINE_HPP_
#define ENTAILPROBE_TOOLS_PIPELINE_HPP_

#include <filesystem>
#include <ostream>

#include "config.hpp"

namespace entailprobe::cli {

void cmd_transform(const RunConfig& cfg, std::ostream& log);
void cmd_freq(const RunConfig& cfg, std::ostream& log);
void cmd_run(const RunConfig& cfg, std::ostream& log);
void cmd_analyze(const RunConfig& cfg, std::ostream& log);
void cmd_all(const RunConfig& cfg, std::ostream& log);

std::filesystem::path dataset_file(const RunConfig& cfg, TaskVariant v);
std::filesystem::path frequency_file(const RunConfig& cfg, TaskVariant v);
std::filesystem::path prediction_file(const RunConfig& cfg, const std::string& backend,
                                      TaskVariant v);
std::filesystem::path veracity_file(const RunConfig& cfg, const std::string& backend);
std::filesystem::path report_dir(const RunConfig& cfg);

}  // namespace entailprobe::cli

#endif  // ENTAILPROBE_TOOLS_PIPELINE_HPP_
