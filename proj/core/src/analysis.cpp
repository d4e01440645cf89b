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

#include "entailprobe/analysis.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

constexpr std::string_view kAbsent = "-";

std::optional<double> ratio(size_t num, size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double entailment_score(ParsedChoice choice, double s_tok) {
  if (choice == ParsedChoice::kUnparsed) {
    throw DataError("entailment score is undefined for an unparsed answer");
  }
  if (!(s_tok >= 0.0 && s_tok <= 1.0)) {
    throw DataError(fmt::format("s_tok {} is outside [0, 1]", s_tok));
  }
  const double is_a = choice == ParsedChoice::kA ? 1.0 : 0.0;
  const double is_bc = 1.0 - is_a;
  return 0.5 + 0.5 * is_a * s_tok - 0.5 * is_bc * s_tok;
}

ScoredPrediction score_prediction(const NLISample& sample, const ModelResponse& response,
                                  std::optional<Veracity> v,
                                  std::optional<FrequencyClass> f) {
  ScoredPrediction p;
  p.sample_id = sample.id;
  p.variant = sample.variant;
  p.hypothesis = sample.hypothesis.render();
  p.choice = response.choice;
  p.predicted = response.choice == ParsedChoice::kA ? Label::kEntail : Label::kNoEntail;
  if (response.choice != ParsedChoice::kUnparsed) {
    p.s_tok_defaulted = !response.s_tok.has_value();
    p.s_ent = entailment_score(response.choice, response.s_tok.value_or(1.0));
  }
  p.v = v;
  p.f = f;
  p.gold = sample.gold;
  return p;
}

std::string serialize_predictions(std::span<const ScoredPrediction> preds) {
  std::string out;
  out.append(tsv::kFormatLine).push_back('\n');
  out.append(
      "sample_id\tvariant\thypothesis\tchoice\tpredicted\ts_ent\ts_tok_defaulted\tv\tf\t"
      "gold\n");
  for (const auto& p : preds) {
    out.append(fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", p.sample_id,
                           to_string(p.variant), p.hypothesis, to_string(p.choice),
                           to_string(p.predicted),
                           p.s_ent ? fmt::format("{}", *p.s_ent) : std::string(kAbsent),
                           p.s_tok_defaulted ? 1 : 0,
                           p.v ? to_string(*p.v) : kAbsent,
                           p.f ? to_string(*p.f) : kAbsent, to_string(p.gold)));
  }
  return out;
}

std::vector<ScoredPrediction> load_predictions(const std::filesystem::path& path) {
  std::vector<ScoredPrediction> out;
  const auto lines = tsv::read_lines(path);
  bool header = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    const auto f = tsv::split(line);
    auto bad = [&](std::string_view field) {
      return DataError(fmt::format("{}:{}: bad field '{}'", path.string(), i + 1, field));
    };
    if (f.size() != 10) throw bad("row (expected 10 fields)");
    ScoredPrediction p;
    p.sample_id = f[0];
    const auto variant = parse_variant(f[1]);
    if (!variant) throw bad("variant");
    p.variant = *variant;
    p.hypothesis = f[2];
    const auto choice = parse_choice_name(f[3]);
    if (!choice) throw bad("choice");
    p.choice = *choice;
    const auto predicted = parse_label(f[4]);
    if (!predicted) throw bad("predicted");
    p.predicted = *predicted;
    if (f[5] != kAbsent) {
      char* end = nullptr;
      p.s_ent = std::strtod(f[5].c_str(), &end);
      if (*end != '\0' || f[5].empty()) throw bad("s_ent");
    }
    if (f[6] != "0" && f[6] != "1") throw bad("s_tok_defaulted");
    p.s_tok_defaulted = f[6] == "1";
    if (f[7] != kAbsent) {
      p.v = parse_veracity(f[7]);
      if (!p.v) throw bad("v");
    }
    if (f[8] != kAbsent) {
      p.f = parse_frequency_class(f[8]);
      if (!p.f) throw bad("f");
    }
    const auto gold = parse_label(f[9]);
    if (!gold) throw bad("gold");
    p.gold = *gold;
    out.push_back(std::move(p));
  }
  if (!header) throw DataError(fmt::format("{}: missing header", path.string()));
  return out;
}

std::string_view to_string(Conditioner c) { return c == Conditioner::kV ? "V" : "F"; }

ConditionalTable conditional_table(std::span<const ScoredPrediction> preds,
                                   Conditioner conditioner) {
  ConditionalTable table;
  table.conditioner = conditioner;
  for (const char* name : conditioner == Conditioner::kV
                               ? std::array{"V=True", "V!=True"}
                               : std::array{"F=Win", "F=Lose"}) {
    ConditionalRow row;
    row.condition = name;
    table.rows.push_back(std::move(row));
  }
  for (const auto& p : preds) {
    ConditionalRow* row = nullptr;
    if (conditioner == Conditioner::kV) {
      if (p.v) row = &table.rows[*p.v == Veracity::kTrue ? 0 : 1];
    } else if (p.f == FrequencyClass::kWin) {
      row = &table.rows[0];
    } else if (p.f == FrequencyClass::kLose) {
      row = &table.rows[1];
    }
    if (!row) {
      ++table.excluded;
      continue;
    }
    ++row->count;
    if (p.predicted == Label::kEntail) ++row->entail_count;
  }
  const bool any_v = std::any_of(preds.begin(), preds.end(), [&](const auto& p) {
    return conditioner == Conditioner::kV ? p.v.has_value() : p.f.has_value();
  });
  if (!any_v) {
    throw DataError(fmt::format("no prediction carries the {} conditioner",
                                to_string(conditioner)));
  }
  for (auto& row : table.rows) row.p_entail = ratio(row.entail_count, row.count);
  return table;
}

HardMetrics hard_metrics(std::span<const ScoredPrediction> preds) {
  HardMetrics m;
  for (const auto& p : preds) {
    const bool pos = p.predicted == Label::kEntail;
    const bool gold = p.gold == Label::kEntail;
    if (pos && gold) ++m.tp;
    else if (pos) ++m.fp;
    else if (gold) ++m.fn;
    else ++m.tn;
  }
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.recall = ratio(m.tp, m.tp + m.fn);
  if (m.precision && m.recall) {
    const double s = *m.precision + *m.recall;
    m.f1 = s > 0.0 ? 2.0 * *m.precision * *m.recall / s : 0.0;
  }
  return m;
}

CurveReport pr_curve(std::span<const ScoredPrediction> preds) {
  CurveReport r;
  std::vector<std::pair<double, bool>> scored;
  scored.reserve(preds.size());
  size_t positives = 0;
  for (const auto& p : preds) {
    if (!p.s_ent) {
      ++r.unparsed_excluded;
      continue;
    }
    const bool gold = p.gold == Label::kEntail;
    positives += gold ? 1 : 0;
    r.hard_scores = r.hard_scores || p.s_tok_defaulted;
    scored.emplace_back(*p.s_ent, gold);
  }
  r.n = scored.size();
  if (positives == 0 || positives == r.n) throw DataError("degenerate labels");
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  const double total_pos = static_cast<double>(positives);
  size_t tp = 0;
  size_t fp = 0;
  for (size_t i = 0; i < scored.size();) {
    const double threshold = scored[i].first;
    for (; i < scored.size() && scored[i].first == threshold; ++i) {
      (scored[i].second ? tp : fp) += 1;
    }
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (r.points.empty()) r.points.push_back({threshold, 0.0, precision, 0, 0});
    r.points.push_back({threshold, static_cast<double>(tp) / total_pos, precision, tp, fp});
  }
  for (size_t k = 1; k < r.points.size(); ++k) {
    const auto& a = r.points[k - 1];
    const auto& b = r.points[k];
    r.auc += (b.recall - a.recall) * (a.precision + b.precision) / 2.0;
  }
  r.positive_rate = total_pos / static_cast<double>(r.n);
  r.auc_norm = (r.auc - r.positive_rate) / (1.0 - r.positive_rate);
  r.below_random = r.auc_norm < 0.0;
  r.f1_at_decision = hard_metrics(preds).f1;
  return r;
}

ConsistencySubsets consistency_split(std::span<const ScoredPrediction> preds) {
  ConsistencySubsets s;
  for (const auto& p : preds) {
    const bool gold = p.gold == Label::kEntail;
    if (p.v) {
      const bool consistent = (gold && *p.v == Veracity::kTrue) ||
                              (!gold && *p.v == Veracity::kFalse);
      (consistent ? s.v_c : s.v_a).push_back(p.sample_id);
    }
    if (p.f == FrequencyClass::kWin) {
      (gold ? s.f_c : s.f_a).push_back(p.sample_id);
    } else if (p.f == FrequencyClass::kLose) {
      (gold ? s.f_a : s.f_c).push_back(p.sample_id);
    }
  }
  return s;
}

std::map<std::string, Veracity> majority_veracity(
    std::span<const std::map<std::string, Veracity>> per_backend) {
  const size_t n = per_backend.size();
  if (n < 3 || n % 2 == 0) {
    throw ConfigError(fmt::format(
        "majority veracity needs an odd number of at least 3 backends, got {}", n));
  }
  std::set<std::string> statements;
  for (const auto& m : per_backend) {
    for (const auto& [k, v] : m) statements.insert(k);
  }
  std::map<std::string, Veracity> out;
  for (const auto& s : statements) {
    size_t n_true = 0;
    size_t n_false = 0;
    for (const auto& m : per_backend) {
      const auto it = m.find(s);
      if (it == m.end()) continue;
      n_true += it->second == Veracity::kTrue ? 1 : 0;
      n_false += it->second == Veracity::kFalse ? 1 : 0;
    }
    out[s] = 2 * n_true > n    ? Veracity::kTrue
             : 2 * n_false > n ? Veracity::kFalse
                               : Veracity::kUnknown;
  }
  return out;
}

std::vector<ScoredPrediction> with_veracity(std::span<const ScoredPrediction> preds,
                                            const std::map<std::string, Veracity>& table) {
  std::vector<ScoredPrediction> out(preds.begin(), preds.end());
  for (auto& p : out) {
    const auto it = table.find(p.hypothesis);
    p.v = it == table.end() ? std::nullopt : std::optional<Veracity>(it->second);
  }
  return out;
}

std::vector<ScoredPrediction> select(std::span<const ScoredPrediction> preds,
                                     std::span<const std::string> ids) {
  const std::set<std::string_view> wanted(ids.begin(), ids.end());
  std::vector<ScoredPrediction> out;
  for (const auto& p : preds) {
    if (wanted.count(p.sample_id)) out.push_back(p);
  }
  return out;
}

std::vector<DeltaRecallRow> delta_recall(
    const std::map<TaskVariant, std::vector<ScoredPrediction>>& preds_by_variant) {
  const auto base = preds_by_variant.find(TaskVariant::kI);
  if (base == preds_by_variant.end()) {
    throw DataError("delta recall needs the I variant as its baseline");
  }
  const auto base_recall = hard_metrics(base->second).recall;
  std::vector<DeltaRecallRow> rows;
  for (const auto& [variant, preds] : preds_by_variant) {
    DeltaRecallRow row;
    row.variant = variant;
    row.n = preds.size();
    row.metrics = hard_metrics(preds);
    if (base_recall && row.metrics.recall) row.delta_recall = *row.metrics.recall - *base_recall;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace entailprobe
