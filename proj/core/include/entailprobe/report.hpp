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

// Run-level analysis and the report directory.
//
//   report.json                 every result below, see schemas/report.schema.json
//   conditional_veracity.tsv    P(Entail | V) per backend and variant
//   conditional_frequency.tsv   P(Entail | F) per backend and variant
//   entity_results.tsv          precision, recall and delta recall vs. I
//   consistency_auc.tsv         AUC_norm on V_C, V_A, F_C, F_A
//   curves/<backend>/<variant>[.<subset>].tsv   PR points
//   manifest.json               seeds, template, backends, digests, exclusions
//
// Every file is a pure function of its inputs, so re-running on the same
// predictions reproduces the directory byte for byte.

#ifndef ENTAILPROBE_REPORT_HPP_
#define ENTAILPROBE_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entailprobe/analysis.hpp"

namespace entailprobe {

inline constexpr int kReportSchemaVersion = 1;

struct Manifest {
  std::string tool_version;
  std::optional<uint64_t> seed;
  std::string rng;
  int template_id = 1;
  std::string template_selection = "fixed";  // or "auto"
  std::string shots = "few4";
  bool ignore_veracity = false;
  std::string veracity_source = "self";
  std::vector<std::string> backend_ids;
  std::vector<std::string> variants;
  std::map<std::string, std::string> cache_digests;  // backend id -> digest
  std::map<std::string, std::string> input_digests;  // input name -> sha256
  std::map<std::string, size_t> exclusions;          // variant -> count
  std::map<std::string, std::string> parameters;
  std::vector<std::string> assumptions;
};

// The assumptions every run records.
std::vector<std::string> default_assumptions();

struct SubsetResult {
  size_t n = 0;
  size_t positives = 0;
  std::optional<CurveReport> curve;  // empty for single-class subsets
};

struct VariantAnalysis {
  std::string backend_id;
  TaskVariant variant = TaskVariant::kI;
  size_t n = 0;
  size_t unparsed = 0;
  size_t s_tok_defaulted = 0;
  HardMetrics hard;
  std::optional<ConditionalTable> conditional_v;
  std::optional<ConditionalTable> conditional_f;
  std::optional<CurveReport> curve;
  std::map<std::string, SubsetResult> consistency;  // "V_C", "V_A", "F_C", "F_A"
};

struct RunAnalysis {
  std::vector<VariantAnalysis> results;                        // backend, variant order
  std::map<std::string, std::vector<DeltaRecallRow>> delta;    // backends with variant I
};

using PredictionSet =
    std::map<std::string, std::map<TaskVariant, std::vector<ScoredPrediction>>>;

VariantAnalysis analyze_variant(const std::string& backend_id, TaskVariant variant,
                                std::span<const ScoredPrediction> preds);
RunAnalysis analyze_run(const PredictionSet& predictions);

std::string report_json(const RunAnalysis& run);
std::string manifest_json(const Manifest& manifest);

// Writes the report directory and returns the files written, relative to
// `dir`, in sorted order. Throws Error naming the path on I/O failure.
std::vector<std::string> emit_report(const RunAnalysis& run, const Manifest& manifest,
                                     const std::filesystem::path& dir);

}  // namespace entailprobe

#endif  // ENTAILPROBE_REPORT_HPP_
