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

#include "pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "entailprobe/analysis.hpp"
#include "entailprobe/backend.hpp"
#include "entailprobe/digest.hpp"
#include "entailprobe/entity_index.hpp"
#include "entailprobe/error.hpp"
#include "entailprobe/frequency.hpp"
#include "entailprobe/http_backend.hpp"
#include "entailprobe/lemmatizer.hpp"
#include "entailprobe/ngram_store.hpp"
#include "entailprobe/prompt.hpp"
#include "entailprobe/report.hpp"
#include "entailprobe/response_cache.hpp"
#include "entailprobe/simulator.hpp"
#include "entailprobe/transforms.hpp"
#include "entailprobe/tsv.hpp"

#ifndef ENTAILPROBE_VERSION
#define ENTAILPROBE_VERSION "0.0.0"
#endif

namespace entailprobe::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kAbsent = "-";

EntityTypeSet load_types(const RunConfig& cfg) {
  if (cfg.entity_types.empty()) return EntityTypeSet::builtin();
  require_file(cfg.entity_types, "entity_types", "custom entity types");
  return EntityTypeSet::load(cfg.entity_types);
}

std::string missing_input(const fs::path& path, std::string_view stage) {
  return fmt::format("missing input {}; run `entail-probe {}` first", path.string(), stage);
}

std::vector<NLISample> load_stage_dataset(const RunConfig& cfg, TaskVariant v,
                                          const EntityTypeSet& types) {
  const fs::path path = dataset_file(cfg, v);
  if (!fs::exists(path)) throw DataError(missing_input(path, "transform"));
  return parse_dataset(path, v, types).samples;
}

void print_warnings(const ValidationReport& report, std::ostream& log) {
  for (const auto& w : report.warnings) log << "warning: " << w << "\n";
}

std::string clean_cell(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; },
                  ' ');
  return s;
}

// Statement whose veracity conditions each sample: its variant-I hypothesis.
std::map<std::string, std::string> statements_by_id(const std::vector<NLISample>& base) {
  std::map<std::string, std::string> m;
  for (const auto& s : base) m[s.id] = s.hypothesis.render();
  return m;
}

std::map<std::string, Veracity, std::less<>> load_veracity_table(const fs::path& path) {
  std::map<std::string, Veracity, std::less<>> table;
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
    const auto v = f.size() >= 2 ? parse_veracity(f[1]) : std::nullopt;
    if (!v) {
      throw DataError(fmt::format("{}:{}: expected 'statement<TAB>True|Unknown|False'",
                                  path.string(), i + 1));
    }
    table[f[0]] = *v;
  }
  return table;
}

struct BackendHandle {
  std::unique_ptr<Backend> backend;
  SimulatedBackend* sim = nullptr;
};

BackendHandle make_backend(const RunConfig& cfg, const std::string& id,
                           const std::vector<std::string>& statements) {
  BackendHandle h;
  if (is_simulated_backend(id)) {
    BiasParams params;
    params.p_entail_given_vtrue = cfg.sim_p_vtrue;
    params.p_entail_given_vother = cfg.sim_p_vother;
    params.p_entail_given_fwin = cfg.sim_p_fwin;
    params.p_entail_given_flose = cfg.sim_p_flose;
    params.mix_weight = cfg.sim_mix_weight;
    params.mode = *parse_bias_mode(cfg.sim_mode);
    const Seed base = cfg.require_seed("simulated backends");
    params.seed = Seed{splitmix64_mix(base.value ^ fnv1a64(id))};
    if (!cfg.sim_veracity_table.empty()) {
      require_file(cfg.sim_veracity_table, "sim_veracity_table", "simulated veracity");
      params.veracity_table = load_veracity_table(cfg.sim_veracity_table);
    } else {
      params.veracity_table =
          synthetic_veracity_table(statements, params.seed, cfg.sim_p_true, cfg.sim_p_false);
    }
    auto sim = std::make_unique<SimulatedBackend>(id, std::move(params));
    h.sim = sim.get();
    h.backend = std::move(sim);
    return h;
  }
  const fs::path path = cfg.backend_dir / (id + ".json");
  require_file(path, "backends", fmt::format("backend '{}'", id));
  auto config = HttpBackendConfig::load(path);
  if (config.backend_id != id) {
    throw ConfigError(fmt::format("{}: backend_id '{}' does not match '{}'", path.string(),
                                  config.backend_id, id));
  }
  h.backend = std::make_unique<HttpBackend>(std::move(config));
  return h;
}

std::unique_ptr<ResponseCache> open_cache(const RunConfig& cfg, const std::string& id) {
  if (!cfg.cache) return nullptr;
  return std::make_unique<ResponseCache>(cfg.out / "cache" / (id + ".jsonl"));
}

std::map<std::string, FrequencyVerdict> load_verdicts(const RunConfig& cfg, TaskVariant v,
                                                      bool required) {
  const fs::path path = frequency_file(cfg, v);
  if (!fs::exists(path)) {
    if (required) throw DataError(missing_input(path, "freq"));
    return {};
  }
  return load_frequency_records(path);
}

BackendRequest make_request(const RunConfig& cfg, RenderedPrompt prompt) {
  BackendRequest req;
  req.prompt = std::move(prompt);
  req.max_tokens = cfg.max_tokens;
  req.temperature = cfg.temperature;
  return req;
}

struct PromptSetup {
  const PromptTemplate* tmpl = nullptr;
  std::optional<FewShotBlock> shots;
  bool ignore_veracity = false;

  RenderedPrompt render(const NLISample& s) const {
    return render_inference_prompt(s, *tmpl, shots ? &*shots : nullptr, ignore_veracity);
  }
};

std::optional<FewShotBlock> load_shots(const RunConfig& cfg) {
  if (cfg.shots == "zero") return std::nullopt;
  if (cfg.few_shot.empty()) return FewShotBlock::default_inference();
  require_file(cfg.few_shot, "few_shot", "custom few-shot examples");
  return FewShotBlock::load(cfg.few_shot);
}

struct TemplateChoice {
  int id = 1;
  bool automatic = false;
  std::map<int, double> scores;
};

// Best AUC_norm on the dev set with the first backend; ties keep the lower id.
TemplateChoice choose_template(const RunConfig& cfg, const std::optional<FewShotBlock>& shots,
                               std::ostream& log) {
  if (cfg.template_id != "auto") return TemplateChoice{cfg.template_id[0] - '0', false, {}};
  require_file(cfg.dev_pool, "dev_pool", "template=auto");
  const auto types = load_types(cfg);
  auto dev = parse_dataset(cfg.dev_pool, TaskVariant::kI, types).samples;
  std::vector<std::string> statements;
  for (const auto& s : dev) statements.push_back(s.hypothesis.render());
  const std::string& id = cfg.backends.front();
  auto handle = make_backend(cfg, id, statements);
  if (handle.sim) {
    if (handle.sim->params().uses_frequency()) {
      throw ConfigError("template=auto with a simulated backend needs sim_mode=veracity_only");
    }
    handle.sim->register_samples(TaskVariant::kI, dev, {});
  }
  auto cache = open_cache(cfg, id);
  TemplateChoice choice{1, true, {}};
  double best = 0.0;
  for (const auto& t : prompt_templates()) {
    PromptSetup setup{&t, shots, cfg.ignore_veracity};
    std::vector<BackendRequest> reqs;
    for (const auto& s : dev) reqs.push_back(make_request(cfg, setup.render(s)));
    const auto outcomes = query_all(*handle.backend, reqs, cache.get(),
                                    static_cast<size_t>(cfg.concurrency));
    std::vector<ScoredPrediction> preds;
    for (size_t i = 0; i < dev.size(); ++i) {
      if (!outcomes[i].response) {
        throw BackendError(fmt::format("template selection: {}", outcomes[i].error));
      }
      preds.push_back(score_prediction(dev[i], *outcomes[i].response, std::nullopt, std::nullopt));
    }
    const double score = pr_curve(preds).auc_norm;
    choice.scores[t.id] = score;
    log << fmt::format("template {}: dev AUC_norm {:.4f}\n", t.id, score);
    if (t.id == 1 || score > best) {
      best = score;
      choice.id = t.id;
    }
  }
  return choice;
}

void write_veracity(const fs::path& path, const std::vector<std::string>& statements,
                    const std::vector<QueryOutcome>& outcomes) {
  std::string out;
  out.append(tsv::kFormatLine).push_back('\n');
  out.append("statement\tchoice\tveracity\ts_tok\n");
  for (size_t i = 0; i < statements.size(); ++i) {
    if (!outcomes[i].response) continue;
    const auto& r = *outcomes[i].response;
    const auto v = veracity_from_choice(r.choice);
    out.append(fmt::format("{}\t{}\t{}\t{}\n", statements[i], to_string(r.choice),
                           v ? to_string(*v) : kAbsent,
                           r.s_tok ? fmt::format("{}", *r.s_tok) : std::string(kAbsent)));
  }
  tsv::write_file(path, out);
}

std::map<std::string, Veracity> read_veracity(const fs::path& path) {
  if (!fs::exists(path)) throw DataError(missing_input(path, "run"));
  std::map<std::string, Veracity> m;
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
    if (f.size() != 4) throw DataError(fmt::format("{}:{}: expected 4 fields", path.string(), i + 1));
    if (const auto v = parse_veracity(f[2])) m[f[0]] = *v;
  }
  return m;
}

json read_json(const fs::path& path, std::string_view stage) {
  if (!fs::exists(path)) throw DataError(missing_input(path, stage));
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string relative_path_of(const fs::path& p, const fs::path& base) {
  return p.lexically_relative(base).generic_string();
}

}  // namespace

fs::path dataset_file(const RunConfig& cfg, TaskVariant v) {
  return cfg.out / "datasets" / fmt::format("{}.tsv", to_string(v));
}

fs::path frequency_file(const RunConfig& cfg, TaskVariant v) {
  return cfg.out / "frequency" / fmt::format("{}.tsv", to_string(v));
}

fs::path prediction_file(const RunConfig& cfg, const std::string& backend, TaskVariant v) {
  return cfg.out / "predictions" / backend / fmt::format("{}.tsv", to_string(v));
}

fs::path veracity_file(const RunConfig& cfg, const std::string& backend) {
  return cfg.out / "predictions" / backend / "veracity.tsv";
}

fs::path report_dir(const RunConfig& cfg) { return cfg.out / "report"; }

void cmd_transform(const RunConfig& cfg, std::ostream& log) {
  require_file(cfg.dataset, "dataset", "transform");
  const bool needs_pool = cfg.wants(TaskVariant::kRP) || cfg.wants(TaskVariant::kRPTA);
  const bool needs_index = cfg.wants(TaskVariant::kRALow) || cfg.wants(TaskVariant::kRAHigh);
  if (needs_pool) require_file(cfg.dev_pool, "dev_pool", "I_RP and I_RP_TA");
  if (needs_index) require_file(cfg.entity_index, "entity_index", "I_RA_low and I_RA_high");
  std::optional<Seed> seed;
  if (needs_pool || needs_index) seed = cfg.require_seed("randomized transforms");

  const auto types = load_types(cfg);
  auto parsed = parse_dataset(cfg.dataset, TaskVariant::kI, types);
  print_warnings(parsed.report, log);
  const auto& base = parsed.samples;
  write_dataset(dataset_file(cfg, TaskVariant::kI), base);

  std::optional<PredicatePool> pool;
  if (needs_pool) pool = build_predicate_pool(cfg.dev_pool, types);
  std::optional<EntityIndex> index;
  if (needs_index) index = EntityIndex::load(cfg.entity_index, types);

  std::vector<Exclusion> exclusions;
  for (const TaskVariant v : cfg.parsed_variants) {
    TransformResult r;
    switch (v) {
      case TaskVariant::kI: r.samples = base; break;
      case TaskVariant::kRP: r = transform_random_premise(base, *pool, *seed); break;
      case TaskVariant::kTA: r.samples = transform_type_args(base); break;
      case TaskVariant::kRALow:
        r = transform_random_args(base, *index, FrequencyBand::kLow5Pct, *seed);
        break;
      case TaskVariant::kRAHigh:
        r = transform_random_args(base, *index, FrequencyBand::kHigh5Pct, *seed);
        break;
      case TaskVariant::kRPTA: r = compose_rp_ta(base, *pool, *seed); break;
    }
    if (v != TaskVariant::kI) write_dataset(dataset_file(cfg, v), r.samples);
    log << fmt::format("{}: {} samples, {} exclusions\n", to_string(v), r.samples.size(),
                       r.exclusions.size());
    exclusions.insert(exclusions.end(), r.exclusions.begin(), r.exclusions.end());
  }
  tsv::write_file(cfg.out / "datasets" / "exclusions.tsv", serialize_exclusions(exclusions));
}

void cmd_freq(const RunConfig& cfg, std::ostream& log) {
  const FrequencyOptions options{{cfg.year_first, cfg.year_last}, cfg.head_verb_fallback};
  std::optional<NgramStore> store;
  if (!cfg.ngram_index.empty()) {
    require_file(cfg.ngram_index, "ngram_index", "freq");
    store = NgramStore::load(cfg.ngram_index);
  } else if (!cfg.ngram_dump.empty()) {
    require_file(cfg.ngram_dump, "ngram_dump", "freq");
    require_file(cfg.ngram_totals, "ngram_totals", "ingesting an n-gram dump");
    IngestStats stats;
    store = NgramStore::ingest(cfg.ngram_dump, cfg.ngram_totals, &stats);
    store->save(cfg.out / "frequency" / "ngram.ngix");
    log << fmt::format("ngram: {} rows read, {} skipped, {} phrases\n", stats.rows_read,
                       stats.rows_skipped, store->phrase_count());
  } else {
    throw ConfigError("ngram_index: freq needs ngram_index or ngram_dump + ngram_totals");
  }
  const Lemmatizer lemmatizer = cfg.lemma_exceptions.empty()
                                    ? Lemmatizer::builtin()
                                    : Lemmatizer::load(cfg.lemma_exceptions);
  const auto types = load_types(cfg);
  for (const TaskVariant v : cfg.parsed_variants) {
    const auto samples = load_stage_dataset(cfg, v, types);
    std::vector<FrequencyRecord> records;
    size_t counts[3] = {0, 0, 0};
    for (const auto& s : samples) {
      auto verdict = classify_frequency(s.premise, s.hypothesis, *store, options, lemmatizer);
      ++counts[static_cast<int>(verdict.f)];
      records.push_back({s.id, std::move(verdict)});
    }
    tsv::write_file(frequency_file(cfg, v), serialize_frequency_records(records));
    log << fmt::format("{}: Win {}, Lose {}, Draw {}\n", to_string(v), counts[0], counts[1],
                       counts[2]);
  }
}

void cmd_run(const RunConfig& cfg, std::ostream& log) {
  const auto types = load_types(cfg);
  const auto base = load_stage_dataset(cfg, TaskVariant::kI, types);
  const auto statement_of = statements_by_id(base);
  std::vector<std::string> statements;
  for (const auto& [id, s] : statement_of) statements.push_back(s);
  std::sort(statements.begin(), statements.end());
  statements.erase(std::unique(statements.begin(), statements.end()), statements.end());

  std::map<TaskVariant, std::vector<NLISample>> datasets;
  std::map<TaskVariant, std::map<std::string, FrequencyVerdict>> verdicts;
  const bool sim_needs_f =
      cfg.sim_mode != "veracity_only" &&
      std::any_of(cfg.backends.begin(), cfg.backends.end(),
                  [](const auto& b) { return is_simulated_backend(b); });
  for (const TaskVariant v : cfg.parsed_variants) {
    datasets[v] = v == TaskVariant::kI ? base : load_stage_dataset(cfg, v, types);
    verdicts[v] = load_verdicts(cfg, v, sim_needs_f);
  }

  PromptSetup setup;
  setup.shots = load_shots(cfg);
  setup.ignore_veracity = cfg.ignore_veracity;
  const TemplateChoice choice = choose_template(cfg, setup.shots, log);
  setup.tmpl = &prompt_template(choice.id);
  const VeracityShots vshots = cfg.veracity_shots.empty()
                                   ? VeracityShots::default_shots()
                                   : VeracityShots::load(cfg.veracity_shots);

  size_t total_requests = 0;
  size_t total_failures = 0;
  json failures_by_backend = json::object();
  for (const auto& id : cfg.backends) {
    auto handle = make_backend(cfg, id, statements);
    auto cache = open_cache(cfg, id);
    const size_t in_flight = static_cast<size_t>(cfg.concurrency);
    std::string failures = std::string(tsv::kFormatLine) + "\nkind\tvariant\tsample_id\terror\n";
    size_t n_fail = 0;
    size_t n_req = 0;

    std::map<std::string, Veracity> veracity;
    if (cfg.veracity) {
      std::vector<BackendRequest> reqs;
      for (const auto& s : statements) {
        reqs.push_back(make_request(cfg, render_veracity_prompt_text(s, vshots)));
      }
      const auto outcomes = query_all(*handle.backend, reqs, cache.get(), in_flight);
      for (size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].response) {
          ++n_fail;
          failures.append(fmt::format("veracity\t-\t{}\t{}\n", clean_cell(statements[i]),
                                      clean_cell(outcomes[i].error)));
        } else if (const auto v = veracity_from_choice(outcomes[i].response->choice)) {
          veracity[statements[i]] = *v;
        }
      }
      n_req += outcomes.size();
      write_veracity(veracity_file(cfg, id), statements, outcomes);
      log << fmt::format("{}: veracity for {} statements\n", id, statements.size());
    }

    for (const TaskVariant v : cfg.parsed_variants) {
      const auto& samples = datasets[v];
      if (handle.sim) handle.sim->register_samples(v, samples, verdicts[v], &statement_of);
      std::vector<BackendRequest> reqs;
      reqs.reserve(samples.size());
      for (const auto& s : samples) reqs.push_back(make_request(cfg, setup.render(s)));
      const auto outcomes = query_all(*handle.backend, reqs, cache.get(), in_flight);
      std::vector<ScoredPrediction> preds;
      size_t variant_failures = 0;
      for (size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!outcomes[i].response) {
          ++variant_failures;
          failures.append(fmt::format("inference\t{}\t{}\t{}\n", to_string(v), s.id,
                                      clean_cell(outcomes[i].error)));
          continue;
        }
        std::optional<Veracity> sv;
        if (const auto st = statement_of.find(s.id); st != statement_of.end()) {
          if (const auto it = veracity.find(st->second); it != veracity.end()) sv = it->second;
        }
        std::optional<FrequencyClass> f;
        if (const auto it = verdicts[v].find(s.id); it != verdicts[v].end()) f = it->second.f;
        preds.push_back(score_prediction(s, *outcomes[i].response, sv, f));
      }
      tsv::write_file(prediction_file(cfg, id, v), serialize_predictions(preds));
      log << fmt::format("{}: {} {} predictions, {} failures\n", id, preds.size(), to_string(v),
                         variant_failures);
      n_fail += variant_failures;
      n_req += samples.size();
    }
    tsv::write_file(cfg.out / "predictions" / id / "failures.tsv", failures);
    failures_by_backend[id] = {{"requests", n_req}, {"failures", n_fail}};
    total_requests += n_req;
    total_failures += n_fail;
  }

  json info = {{"template_id", choice.id},
               {"template_selection", choice.automatic ? "auto" : "fixed"},
               {"shots", cfg.shots},
               {"ignore_veracity", cfg.ignore_veracity},
               {"backends", cfg.backends},
               {"failures", failures_by_backend}};
  json variants = json::array();
  for (const TaskVariant v : cfg.parsed_variants) variants.push_back(std::string(to_string(v)));
  info["variants"] = variants;
  json scores = json::object();
  for (const auto& [t, s] : choice.scores) scores[std::to_string(t)] = s;
  info["template_scores"] = scores;
  tsv::write_file(cfg.out / "predictions" / "run_info.json", info.dump(2) + "\n");

  const double rate = total_requests == 0
                          ? 0.0
                          : static_cast<double>(total_failures) / static_cast<double>(total_requests);
  log << fmt::format("run: {} requests, {} failures ({:.2f}%)\n", total_requests, total_failures,
                     100.0 * rate);
  if (rate > cfg.max_failure_rate) {
    throw BackendError(fmt::format(
        "failure rate {:.4f} exceeds max_failure_rate {}; see predictions/<backend>/failures.tsv",
        rate, cfg.max_failure_rate));
  }
}

void cmd_analyze(const RunConfig& cfg, std::ostream& log) {
  const fs::path info_path = cfg.out / "predictions" / "run_info.json";
  const json info = read_json(info_path, "run");

  std::vector<std::string> backends = info.at("backends").get<std::vector<std::string>>();
  std::vector<TaskVariant> variants;
  for (const auto& v : info.at("variants")) variants.push_back(*parse_variant(v.get<std::string>()));

  PredictionSet preds;
  for (const auto& b : backends) {
    for (const TaskVariant v : variants) {
      const fs::path path = prediction_file(cfg, b, v);
      if (!fs::exists(path)) throw DataError(missing_input(path, "run"));
      preds[b][v] = load_predictions(path);
    }
  }

  if (cfg.v_source == "majority") {
    std::vector<std::map<std::string, Veracity>> votes;
    for (const auto& b : backends) votes.push_back(read_veracity(veracity_file(cfg, b)));
    const auto majority = majority_veracity(votes);
    const auto base = load_stage_dataset(cfg, TaskVariant::kI, load_types(cfg));
    const auto statement_of = statements_by_id(base);
    for (auto& [b, by_variant] : preds) {
      for (auto& [v, list] : by_variant) {
        for (auto& p : list) {
          p.v.reset();
          const auto st = statement_of.find(p.sample_id);
          if (st == statement_of.end()) continue;
          if (const auto it = majority.find(st->second); it != majority.end()) p.v = it->second;
        }
      }
    }
  }

  const RunAnalysis analysis = analyze_run(preds);

  Manifest m;
  m.tool_version = ENTAILPROBE_VERSION;
  m.seed = cfg.seed;
  m.rng = std::string(KeyedRng::kGeneratorName);
  m.template_id = info.at("template_id").get<int>();
  m.template_selection = info.at("template_selection").get<std::string>();
  m.shots = info.at("shots").get<std::string>();
  m.ignore_veracity = info.at("ignore_veracity").get<bool>();
  m.veracity_source = cfg.v_source;
  m.backend_ids = backends;
  for (const TaskVariant v : variants) m.variants.emplace_back(to_string(v));
  for (const auto& b : backends) {
    const fs::path cache_path = cfg.out / "cache" / (b + ".jsonl");
    if (fs::exists(cache_path)) m.cache_digests[b] = ResponseCache(cache_path).content_digest();
  }
  for (const auto& [name, path] : cfg.named_inputs()) {
    if (fs::is_regular_file(path)) m.input_digests[name] = sha256_file(path);
  }
  for (const char* sub : {"datasets", "frequency", "predictions"}) {
    const fs::path dir = cfg.out / sub;
    if (!fs::is_directory(dir)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      m.input_digests[relative_path_of(entry.path(), cfg.out)] = sha256_file(entry.path());
    }
  }
  const fs::path excl = cfg.out / "datasets" / "exclusions.tsv";
  if (fs::exists(excl)) {
    for (const TaskVariant v : variants) m.exclusions[std::string(to_string(v))] = 0;
    bool header = false;
    for (const auto& line : tsv::read_lines(excl)) {
      if (line.empty() || line.front() == '#') continue;
      if (!header) {
        header = true;
        continue;
      }
      const auto f = tsv::split(line);
      if (!f.empty() && m.exclusions.count(f[0])) ++m.exclusions[f[0]];
    }
  }
  m.parameters = cfg.manifest_parameters();
  for (const auto& [t, s] : info.at("template_scores").items()) {
    m.parameters["template_score_" + t] = fmt::format("{}", s.get<double>());
  }
  m.assumptions = default_assumptions();

  const auto written = emit_report(analysis, m, report_dir(cfg));
  log << fmt::format("report: {} files in {}\n", written.size(), report_dir(cfg).string());
}

void cmd_all(const RunConfig& cfg, std::ostream& log) {
  cmd_transform(cfg, log);
  if (!cfg.ngram_index.empty() || !cfg.ngram_dump.empty()) {
    cmd_freq(cfg, log);
  } else {
    log << "freq: skipped, no n-gram source configured\n";
  }
  cmd_run(cfg, log);
  cmd_analyze(cfg, log);
}

}  // namespace entailprobe::cli
