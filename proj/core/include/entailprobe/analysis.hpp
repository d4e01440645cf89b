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

// Scores, conditional tables, precision-recall curves and consistency
// subsets.
//
// Entailment score:
//   s_ent = 0.5 + 0.5 * [choice = A] * s_tok - 0.5 * [choice in {B, C}] * s_tok
//
// PR curve: thresholds are the distinct s_ent values in descending order and
// every sample scoring >= threshold is predicted positive, so tied samples
// enter together. The curve starts at (recall 0, precision at the highest
// threshold) and the area is the trapezoid rule over recall.
//   auc_norm = (auc - positive_rate) / (1 - positive_rate)
// Values below zero are reported as-is and flagged below_random.

#ifndef ENTAILPROBE_ANALYSIS_HPP_
#define ENTAILPROBE_ANALYSIS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entailprobe/backend.hpp"
#include "entailprobe/dataset.hpp"
#include "entailprobe/frequency.hpp"
#include "entailprobe/prompt.hpp"

namespace entailprobe {

// Throws DataError for Unparsed or s_tok outside [0, 1].
double entailment_score(ParsedChoice choice, double s_tok);

struct ScoredPrediction {
  std::string sample_id;
  TaskVariant variant = TaskVariant::kI;
  std::string hypothesis;  // rendered; joins veracity predictions
  ParsedChoice choice = ParsedChoice::kUnparsed;
  Label predicted = Label::kNoEntail;  // Entail iff choice == A
  std::optional<double> s_ent;         // empty for Unparsed
  bool s_tok_defaulted = false;        // s_tok was missing and taken as 1
  std::optional<Veracity> v;
  std::optional<FrequencyClass> f;
  Label gold = Label::kNoEntail;
};

ScoredPrediction score_prediction(const NLISample& sample, const ModelResponse& response,
                                  std::optional<Veracity> v,
                                  std::optional<FrequencyClass> f);

// Predictions TSV: #format line, header
//   sample_id variant hypothesis choice predicted s_ent s_tok_defaulted v f gold
// with "-" for absent optionals.
std::string serialize_predictions(std::span<const ScoredPrediction> preds);
std::vector<ScoredPrediction> load_predictions(const std::filesystem::path& path);

enum class Conditioner { kV, kF };
std::string_view to_string(Conditioner c);  // "V" / "F"

struct ConditionalRow {
  std::string condition;  // "V=True", "V!=True", "F=Win", "F=Lose"
  size_t count = 0;
  size_t entail_count = 0;
  std::optional<double> p_entail;  // empty when count == 0
};

struct ConditionalTable {
  Conditioner conditioner = Conditioner::kV;
  std::vector<ConditionalRow> rows;
  // Samples without the conditioner (no V, or F = Draw / absent).
  size_t excluded = 0;
};

// Hard labels: Unparsed counts as NoEntail. Throws DataError when no sample
// carries the conditioner.
ConditionalTable conditional_table(std::span<const ScoredPrediction> preds,
                                   Conditioner conditioner);

struct PrPoint {
  double threshold = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  size_t tp = 0;
  size_t fp = 0;
};

struct HardMetrics {
  size_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::optional<double> precision;  // empty without predicted positives
  std::optional<double> recall;     // empty without gold positives
  std::optional<double> f1;
};

// Decision point A vs B/C; Unparsed counts as NoEntail.
HardMetrics hard_metrics(std::span<const ScoredPrediction> preds);

struct CurveReport {
  std::vector<PrPoint> points;  // the anchor first
  double auc = 0.0;
  double auc_norm = 0.0;
  double positive_rate = 0.0;
  size_t n = 0;                 // samples on the curve
  size_t unparsed_excluded = 0;
  bool hard_scores = false;     // some s_tok was defaulted
  bool below_random = false;
  std::optional<double> f1_at_decision;
};

// Throws DataError("degenerate labels") unless the scored samples contain
// both gold classes.
CurveReport pr_curve(std::span<const ScoredPrediction> preds);

struct ConsistencySubsets {
  std::vector<std::string> v_c, v_a, f_c, f_a;
};

// V_C: (G=Entail and V=True) or (G=NoEntail and V=False); V_A: the other
// V-labelled samples. F_C: (Entail, Win) or (NoEntail, Lose); F_A: (Entail,
// Lose) or (NoEntail, Win). Draw and unlabelled samples are in no F set.
ConsistencySubsets consistency_split(std::span<const ScoredPrediction> preds);

// Majority vote per statement over an odd number (>= 3) of backends: True
// when more than half say True, False when more than half say False,
// Unknown otherwise. A statement missing from a backend is an abstention.
// Throws ConfigError for fewer than 3 or an even number of backends.
std::map<std::string, Veracity> majority_veracity(
    std::span<const std::map<std::string, Veracity>> per_backend);

// Copies `preds` with v replaced by table[hypothesis] (absent when missing).
std::vector<ScoredPrediction> with_veracity(std::span<const ScoredPrediction> preds,
                                            const std::map<std::string, Veracity>& table);

std::vector<ScoredPrediction> select(std::span<const ScoredPrediction> preds,
                                     std::span<const std::string> ids);

struct DeltaRecallRow {
  TaskVariant variant = TaskVariant::kI;
  size_t n = 0;
  HardMetrics metrics;
  std::optional<double> delta_recall;  // recall - recall(I)
};

// Rows in variant order. Throws DataError when variant I is missing.
std::vector<DeltaRecallRow> delta_recall(
    const std::map<TaskVariant, std::vector<ScoredPrediction>>& preds_by_variant);

}  // namespace entailprobe

#endif  // ENTAILPROBE_ANALYSIS_HPP_
