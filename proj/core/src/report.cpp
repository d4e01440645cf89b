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

#include "entailprobe/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <json.hpp>

#include "entailprobe/error.hpp"
#include "entailprobe/tsv.hpp"

namespace entailprobe {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::string_view kNA = "NA";
constexpr const char* kSubsets[] = {"V_C", "V_A", "F_C", "F_A"};

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::string cell(const std::optional<double>& v) {
  return v ? tsv::format_double(*v) : std::string(kNA);
}

ojson metrics_json(const HardMetrics& m) {
  return ojson{{"tp", m.tp},
               {"fp", m.fp},
               {"fn", m.fn},
               {"tn", m.tn},
               {"precision", opt(m.precision)},
               {"recall", opt(m.recall)},
               {"f1", opt(m.f1)}};
}

ojson table_json(const std::optional<ConditionalTable>& t) {
  if (!t) return nullptr;
  ojson rows = ojson::array();
  for (const auto& r : t->rows) {
    rows.push_back({{"condition", r.condition},
                    {"count", r.count},
                    {"entail_count", r.entail_count},
                    {"p_entail", opt(r.p_entail)}});
  }
  return ojson{{"conditioner", std::string(to_string(t->conditioner))},
               {"excluded", t->excluded},
               {"rows", rows}};
}

ojson curve_json(const std::optional<CurveReport>& c) {
  if (!c) return nullptr;
  return ojson{{"n", c->n},
               {"unparsed_excluded", c->unparsed_excluded},
               {"positive_rate", c->positive_rate},
               {"auc", c->auc},
               {"auc_norm", c->auc_norm},
               {"below_random", c->below_random},
               {"hard_scores", c->hard_scores},
               {"f1_at_decision", opt(c->f1_at_decision)},
               {"points", c->points.size()}};
}

std::string curve_tsv(const CurveReport& c) {
  std::string out = "threshold\trecall\tprecision\ttp\tfp\n";
  for (const auto& p : c.points) {
    out.append(fmt::format("{}\t{}\t{}\t{}\t{}\n", p.threshold, p.recall, p.precision, p.tp,
                           p.fp));
  }
  return out;
}

std::optional<CurveReport> try_curve(std::span<const ScoredPrediction> preds) {
  try {
    return pr_curve(preds);
  } catch (const DataError&) {
    return std::nullopt;  // single-class or empty
  }
}

std::optional<ConditionalTable> try_table(std::span<const ScoredPrediction> preds,
                                          Conditioner c) {
  try {
    return conditional_table(preds, c);
  } catch (const DataError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<std::string> default_assumptions() {
  return {
      "s_tok is the probability of the emitted answer-letter token",
      "missing s_tok is taken as 1.0 (hard decision) and flagged",
      "precision, recall and F1 use the A vs B/C decision point (s_ent threshold 0.5)",
      "unparsed answers are excluded from curves and count as NoEntail in hard-label tables",
      "PR curves group tied scores and integrate with the trapezoid rule from a "
      "(0, precision at top threshold) anchor",
      "AUC_norm baseline is the positive rate of the scored population",
      "veracity conditioning is binary: V=True versus V!=True",
      "frequency Draw samples are left out of F tables and F subsets",
      "sampling temperature is 0",
  };
}

VariantAnalysis analyze_variant(const std::string& backend_id, TaskVariant variant,
                                std::span<const ScoredPrediction> preds) {
  VariantAnalysis a;
  a.backend_id = backend_id;
  a.variant = variant;
  a.n = preds.size();
  for (const auto& p : preds) {
    a.unparsed += p.choice == ParsedChoice::kUnparsed ? 1 : 0;
    a.s_tok_defaulted += p.s_tok_defaulted ? 1 : 0;
  }
  a.hard = hard_metrics(preds);
  a.conditional_v = try_table(preds, Conditioner::kV);
  a.conditional_f = try_table(preds, Conditioner::kF);
  a.curve = try_curve(preds);
  const ConsistencySubsets s = consistency_split(preds);
  const std::vector<std::string>* sets[] = {&s.v_c, &s.v_a, &s.f_c, &s.f_a};
  for (size_t i = 0; i < 4; ++i) {
    const auto sub = select(preds, *sets[i]);
    SubsetResult r;
    r.n = sub.size();
    r.positives = static_cast<size_t>(std::count_if(
        sub.begin(), sub.end(), [](const auto& p) { return p.gold == Label::kEntail; }));
    r.curve = try_curve(sub);
    a.consistency[kSubsets[i]] = std::move(r);
  }
  return a;
}

RunAnalysis analyze_run(const PredictionSet& predictions) {
  RunAnalysis run;
  for (const auto& [backend, by_variant] : predictions) {
    for (const auto& [variant, preds] : by_variant) {
      run.results.push_back(analyze_variant(backend, variant, preds));
    }
    if (by_variant.count(TaskVariant::kI)) run.delta[backend] = delta_recall(by_variant);
  }
  return run;
}

std::string report_json(const RunAnalysis& run) {
  ojson results = ojson::array();
  for (const auto& a : run.results) {
    ojson consistency = ojson::object();
    for (const char* name : kSubsets) {
      const auto& r = a.consistency.at(name);
      consistency[name] = {{"n", r.n},
                           {"positives", r.positives},
                           {"auc_norm", r.curve ? ojson(r.curve->auc_norm) : ojson(nullptr)},
                           {"curve", curve_json(r.curve)}};
    }
    results.push_back({{"backend", a.backend_id},
                       {"variant", std::string(to_string(a.variant))},
                       {"n", a.n},
                       {"unparsed", a.unparsed},
                       {"s_tok_defaulted", a.s_tok_defaulted},
                       {"hard", metrics_json(a.hard)},
                       {"conditional_veracity", table_json(a.conditional_v)},
                       {"conditional_frequency", table_json(a.conditional_f)},
                       {"curve", curve_json(a.curve)},
                       {"consistency", consistency}});
  }
  ojson delta = ojson::array();
  for (const auto& [backend, rows] : run.delta) {
    for (const auto& r : rows) {
      delta.push_back({{"backend", backend},
                       {"variant", std::string(to_string(r.variant))},
                       {"n", r.n},
                       {"precision", opt(r.metrics.precision)},
                       {"recall", opt(r.metrics.recall)},
                       {"delta_recall", opt(r.delta_recall)}});
    }
  }
  const ojson doc = {{"schema_version", kReportSchemaVersion},
                     {"results", results},
                     {"delta_recall", delta}};
  return doc.dump(2) + "\n";
}

std::string manifest_json(const Manifest& m) {
  const ojson doc = {{"tool_version", m.tool_version},
                     {"seed", m.seed ? ojson(*m.seed) : ojson(nullptr)},
                     {"rng", m.rng},
                     {"template_id", m.template_id},
                     {"template_selection", m.template_selection},
                     {"shots", m.shots},
                     {"ignore_veracity", m.ignore_veracity},
                     {"veracity_source", m.veracity_source},
                     {"backend_ids", m.backend_ids},
                     {"variants", m.variants},
                     {"cache_digests", m.cache_digests},
                     {"input_digests", m.input_digests},
                     {"exclusions", m.exclusions},
                     {"parameters", m.parameters},
                     {"assumptions", m.assumptions}};
  return doc.dump(2) + "\n";
}

std::vector<std::string> emit_report(const RunAnalysis& run, const Manifest& manifest,
                                     const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  files["report.json"] = report_json(run);
  files["manifest.json"] = manifest_json(manifest);

  std::string cv = "backend\tvariant\tcondition\tcount\tentail_count\tp_entail\n";
  std::string cf = cv;
  std::string consistency =
      "backend\tvariant\tsubset\tn\tpositives\tauc\tauc_norm\tbelow_random\n";
  for (const auto& a : run.results) {
    const auto variant = to_string(a.variant);
    for (const auto& [t, out] : {std::pair{&a.conditional_v, &cv}, std::pair{&a.conditional_f, &cf}}) {
      if (!*t) continue;
      for (const auto& r : (*t)->rows) {
        out->append(fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", a.backend_id, variant, r.condition,
                                r.count, r.entail_count, cell(r.p_entail)));
      }
    }
    for (const char* name : kSubsets) {
      const auto& r = a.consistency.at(name);
      consistency.append(fmt::format(
          "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", a.backend_id, variant, name, r.n, r.positives,
          r.curve ? tsv::format_double(r.curve->auc) : std::string(kNA),
          r.curve ? tsv::format_double(r.curve->auc_norm) : std::string(kNA),
          r.curve ? (r.curve->below_random ? "1" : "0") : kNA));
      if (r.curve) {
        files[fmt::format("curves/{}/{}.{}.tsv", a.backend_id, variant, name)] =
            curve_tsv(*r.curve);
      }
    }
    if (a.curve) files[fmt::format("curves/{}/{}.tsv", a.backend_id, variant)] = curve_tsv(*a.curve);
  }
  std::string entity = "backend\tvariant\tn\tprecision\trecall\tf1\tdelta_recall\n";
  for (const auto& [backend, rows] : run.delta) {
    for (const auto& r : rows) {
      entity.append(fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", backend, to_string(r.variant),
                                r.n, cell(r.metrics.precision), cell(r.metrics.recall),
                                cell(r.metrics.f1), cell(r.delta_recall)));
    }
  }
  files["conditional_veracity.tsv"] = cv;
  files["conditional_frequency.tsv"] = cf;
  files["consistency_auc.tsv"] = consistency;
  files["entity_results.tsv"] = entity;

  std::error_code ec;
  std::filesystem::remove_all(dir / "curves", ec);
  if (ec) {
    throw Error(fmt::format("cannot clear {}: {}", (dir / "curves").string(), ec.message()));
  }
  std::vector<std::string> written;
  for (const auto& [rel, content] : files) {
    tsv::write_file(dir / rel, content);
    written.push_back(rel);
  }
  return written;
}

}  // namespace entailprobe
