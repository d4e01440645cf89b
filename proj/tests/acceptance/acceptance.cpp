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

// Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails. Tolerances and time limits are pinned below.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "entailprobe/analysis.hpp"
#include "entailprobe/backend.hpp"
#include "entailprobe/dataset.hpp"
#include "entailprobe/entity_index.hpp"
#include "entailprobe/frequency.hpp"
#include "entailprobe/lemmatizer.hpp"
#include "entailprobe/prompt.hpp"
#include "entailprobe/simulator.hpp"
#include "entailprobe/transforms.hpp"
#include "entailprobe/tsv.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

namespace ep = entailprobe;
namespace fs = std::filesystem;
using ep::testing::cpp_rational;
using ep::testing::read_file;

namespace {

constexpr uint64_t kSeed = 42;
constexpr double kRecoveryTolerance = 0.02;    // criteria 2 and 3
constexpr double kRatioTolerance = 0.15;       // criterion 3
constexpr double kShuffleTolerance = 0.05;     // criterion 6
constexpr double kConsistencyGap = 0.3;        // criterion 7
constexpr double kFormulaSeconds = 1.0;
constexpr double kVeracitySeconds = 30.0;
constexpr double kEndToEndSeconds = 120.0;
constexpr size_t kRecoveryPairs = 5000;        // 10,000 samples

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(const fs::path& cwd, const std::string& args, std::string* log = nullptr) {
  const fs::path log_path = cwd / "cli.log";
  const std::string cmd = fmt::format("cd '{}' && '{}' {} > '{}' 2>&1", cwd.string(),
                                      ENTAILPROBE_CLI, args, log_path.string());
  const int status = std::system(cmd.c_str());
  if (log) *log = read_file(log_path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return out;
}

// ---------------------------------------------------------------- 1
Outcome formula_exactness() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::pair<ep::ParsedChoice, char> choices[] = {
      {ep::ParsedChoice::kA, 'A'}, {ep::ParsedChoice::kB, 'B'}, {ep::ParsedChoice::kC, 'C'}};
  const cpp_rational grid[] = {cpp_rational(0), cpp_rational(1, 4), cpp_rational(1, 2),
                               cpp_rational(3, 4), cpp_rational(1)};
  size_t cases = 0, exact = 0;
  for (const auto& [choice, letter] : choices) {
    for (const auto& s : grid) {
      ++cases;
      const double got = ep::entailment_score(choice, static_cast<double>(s));
      exact += cpp_rational(got) == ep::testing::score_oracle(letter, s);
    }
  }
  bool unparsed_rejected = false;
  try {
    ep::entailment_score(ep::ParsedChoice::kUnparsed, 0.5);
  } catch (const ep::DataError&) {
    unparsed_rejected = true;
  }
  const double elapsed = seconds_since(t0);
  o.check(exact == cases, fmt::format("{}/{} grid cases exact (3 choices x 5 s_tok)", exact, cases));
  o.check(unparsed_rejected, "Unparsed has no score");
  o.check(elapsed < kFormulaSeconds, fmt::format("{:.3f}s < {}s", elapsed, kFormulaSeconds));
  return o;
}

// Queries every request in order with the library's batch path.
std::vector<ep::ModelResponse> ask(ep::Backend& backend,
                                   const std::vector<ep::BackendRequest>& requests) {
  const auto outcomes = ep::query_all(backend, requests, nullptr, 1);
  std::vector<ep::ModelResponse> out;
  for (const auto& r : outcomes) {
    if (!r.response) throw ep::BackendError(r.error);
    out.push_back(*r.response);
  }
  return out;
}

ep::BackendRequest request_for(ep::RenderedPrompt prompt) {
  ep::BackendRequest r;
  r.prompt = std::move(prompt);
  return r;
}

// Runs the simulated model on the samples and returns the conditional
// table for the conditioner. Veracity comes from the model's own answers on
// the untransformed hypotheses in `statements` (sample id -> statement).
ep::ConditionalTable simulate_table(const ep::BiasParams& params,
                                    const std::vector<ep::NLISample>& samples,
                                    const std::map<std::string, std::string>& statements,
                                    const std::map<std::string, ep::FrequencyVerdict>& verdicts,
                                    ep::Conditioner conditioner) {
  ep::SimulatedBackend backend("sim", params);
  const ep::TaskVariant variant = samples.front().variant;
  backend.register_samples(variant, samples, verdicts, &statements);

  std::map<std::string, ep::Veracity> veracity;
  if (conditioner == ep::Conditioner::kV) {
    std::set<std::string> unique;
    for (const auto& [id, s] : statements) unique.insert(s);
    std::vector<ep::BackendRequest> reqs;
    for (const auto& s : unique) reqs.push_back(request_for(ep::render_veracity_prompt_text(s)));
    const auto answers = ask(backend, reqs);
    for (size_t i = 0; i < reqs.size(); ++i) {
      if (auto v = ep::veracity_from_choice(answers[i].choice)) {
        veracity[reqs[i].prompt.sample_id] = *v;
      }
    }
  }
  std::vector<ep::BackendRequest> reqs;
  for (const auto& s : samples) {
    reqs.push_back(request_for(ep::render_inference_prompt(
        s, ep::prompt_template(1), &ep::FewShotBlock::default_inference(), false)));
  }
  const auto answers = ask(backend, reqs);
  std::vector<ep::ScoredPrediction> preds;
  for (size_t i = 0; i < samples.size(); ++i) {
    std::optional<ep::Veracity> v;
    if (const auto it = veracity.find(statements.at(samples[i].id)); it != veracity.end()) {
      v = it->second;
    }
    std::optional<ep::FrequencyClass> f;
    if (const auto it = verdicts.find(samples[i].id); it != verdicts.end()) f = it->second.f;
    preds.push_back(ep::score_prediction(samples[i], answers[i], v, f));
  }
  return ep::conditional_table(preds, conditioner);
}

struct RecoveryCorpus {
  ep::testing::SyntheticCorpus corpus;
  std::map<std::string, std::string> statements;
  ep::PredicatePool pool;
};

RecoveryCorpus recovery_corpus() {
  RecoveryCorpus r{ep::testing::make_corpus({.pairs = kRecoveryPairs, .seed = kSeed}), {}, {}};
  for (const auto& s : r.corpus.samples) r.statements[s.id] = s.hypothesis.render();
  r.pool = ep::build_predicate_pool(r.corpus.dev);
  return r;
}

std::vector<std::string> statement_list(const std::map<std::string, std::string>& m) {
  std::vector<std::string> out;
  for (const auto& [id, s] : m) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------- 2
Outcome veracity_recovery(const RecoveryCorpus& rc) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    const char* name;
    ep::TaskVariant variant;
    double p_true, p_other;
  };
  const Row rows[] = {{"GPT-3.5 I", ep::TaskVariant::kI, 0.776, 0.636},
                      {"GPT-3.5 I_RP", ep::TaskVariant::kRP, 0.413, 0.188},
                      {"LLaMA I_RP", ep::TaskVariant::kRP, 0.397, 0.207},
                      {"PaLM I_RP", ep::TaskVariant::kRP, 0.399, 0.199}};
  const auto rp = ep::transform_random_premise(rc.corpus.samples, rc.pool, ep::Seed{kSeed});
  for (const auto& row : rows) {
    ep::BiasParams params;
    params.mode = ep::BiasMode::kVeracityOnly;
    params.p_entail_given_vtrue = row.p_true;
    params.p_entail_given_vother = row.p_other;
    params.seed = ep::Seed{kSeed};
    params.veracity_table =
        ep::synthetic_veracity_table(statement_list(rc.statements), ep::Seed{kSeed}, 0.5, 0.25);
    const auto& samples = row.variant == ep::TaskVariant::kI ? rc.corpus.samples : rp.samples;
    const auto t = simulate_table(params, samples, rc.statements, {}, ep::Conditioner::kV);
    const auto& hit = t.rows[0];
    const auto& other = t.rows[1];
    const double e1 = std::abs(*hit.p_entail - row.p_true);
    const double e2 = std::abs(*other.p_entail - row.p_other);
    o.check(e1 <= kRecoveryTolerance && e2 <= kRecoveryTolerance,
            fmt::format("{} n={}: P(E|V=True) {:.4f} vs {:.3f} (n={}), P(E|V!=True) {:.4f} vs "
                        "{:.3f} (n={})",
                        row.name, samples.size(), *hit.p_entail, row.p_true, hit.count,
                        *other.p_entail, row.p_other, other.count));
  }
  const double elapsed = seconds_since(t0);
  o.check(elapsed < kVeracitySeconds, fmt::format("{:.2f}s < {}s", elapsed, kVeracitySeconds));
  return o;
}

// ---------------------------------------------------------------- 3
Outcome frequency_recovery(const RecoveryCorpus& rc) {
  Outcome o;
  const auto rpta = ep::compose_rp_ta(rc.corpus.samples, rc.pool, ep::Seed{kSeed});
  std::map<std::string, ep::FrequencyVerdict> verdicts;
  for (const auto& s : rpta.samples) {
    verdicts[s.id] = ep::classify_frequency(s.premise, s.hypothesis, rc.corpus.store);
  }
  struct Row {
    const char* name;
    double p_win, p_lose, target_ratio;
  };
  const Row rows[] = {{"GPT-3.5 I_RP_TA", 0.238, 0.140, 1.7}, {"PaLM I_RP_TA", 0.115, 0.058, 2.0}};
  for (const auto& row : rows) {
    ep::BiasParams params;
    params.mode = ep::BiasMode::kFrequencyOnly;
    params.p_entail_given_fwin = row.p_win;
    params.p_entail_given_flose = row.p_lose;
    params.seed = ep::Seed{kSeed};
    const auto t = simulate_table(params, rpta.samples, rc.statements, verdicts,
                                  ep::Conditioner::kF);
    const auto& win = t.rows[0];
    const auto& lose = t.rows[1];
    const double ratio = *win.p_entail / *lose.p_entail;
    o.check(std::abs(*win.p_entail - row.p_win) <= kRecoveryTolerance &&
                std::abs(*lose.p_entail - row.p_lose) <= kRecoveryTolerance,
            fmt::format("{} n={}: P(E|Win) {:.4f} vs {:.3f} (n={}), P(E|Lose) {:.4f} vs {:.3f} "
                        "(n={}), Draw excluded {}",
                        row.name, rpta.samples.size(), *win.p_entail, row.p_win, win.count,
                        *lose.p_entail, row.p_lose, lose.count, t.excluded));
    // Delta-method standard error of the ratio at the true rates.
    const double se = (row.p_win / row.p_lose) *
                      std::sqrt((1 - row.p_win) / (row.p_win * static_cast<double>(win.count)) +
                                (1 - row.p_lose) / (row.p_lose * static_cast<double>(lose.count)));
    o.note(fmt::format("{} ratio standard error at these counts: {:.3f}", row.name, se));
    o.check(std::abs(ratio - row.target_ratio) <= kRatioTolerance,
            fmt::format("{} Win/Lose ratio {:.3f} vs {:.1f}x (tolerance {})", row.name, ratio,
                        row.target_ratio, kRatioTolerance));
  }
  return o;
}

// ---------------------------------------------------------------- 4
ep::FrequencyClass mirrored(ep::FrequencyClass f) {
  if (f == ep::FrequencyClass::kWin) return ep::FrequencyClass::kLose;
  if (f == ep::FrequencyClass::kLose) return ep::FrequencyClass::kWin;
  return f;
}

char letter(ep::FrequencyClass f) {
  return f == ep::FrequencyClass::kWin ? 'W' : f == ep::FrequencyClass::kLose ? 'L' : 'D';
}

Outcome frequency_classifier() {
  Outcome o;
  const ep::YearRange year{2000, 2000};
  ep::NgramStore store("fixture", year);
  const ep::FrequencyOptions options{year, true};
  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> log_freq(-9.0, -3.0);
  const double ratios[] = {4.99, 5.0, 5.01};

  struct Pair {
    ep::Proposition premise, hypothesis;
    double p, h;
  };
  std::vector<Pair> pairs;
  std::set<std::string> phrases;
  size_t boundary = 0, zeros = 0;
  auto prop = [](const std::string& verb) {
    return ep::Proposition("{X} " + verb + " {Y}", {"a", "thing", ep::SlotId::kX},
                           {"b", "thing", ep::SlotId::kY});
  };
  for (int i = 0; i < 1000; ++i) {
    double p = std::pow(10.0, log_freq(gen));
    double h = std::pow(10.0, log_freq(gen));
    if (i % 10 < 3) {
      h = p * ratios[i % 3];
      if (i % 20 < 10) std::swap(p, h);
      ++boundary;
    } else if (i % 10 == 3) {
      const int z = (i / 10) % 3;
      if (z != 1) p = 0.0;
      if (z != 2) h = 0.0;
      ++zeros;
    }
    Pair pr{prop(fmt::format("zqp{}k", i)), prop(fmt::format("zqh{}k", i)), p, h};
    const auto pp = ep::analyze_predicate(pr.premise).phrase;
    const auto hp = ep::analyze_predicate(pr.hypothesis).phrase;
    if (!phrases.insert(pp).second || !phrases.insert(hp).second) {
      o.check(false, "fixture phrases are unique");
      return o;
    }
    store.set(pp, 2000, p);
    store.set(hp, 2000, h);
    pairs.push_back(std::move(pr));
  }
  size_t match = 0, antisym = 0, scale = 0;
  const double factors[] = {0.125, 2.0, 1024.0};
  std::vector<ep::NgramStore> scaled;
  for (double k : factors) scaled.push_back(store.scaled(k));
  std::map<char, size_t> tally;
  for (const auto& pr : pairs) {
    const auto v = ep::classify_frequency(pr.premise, pr.hypothesis, store, options);
    const char expected = ep::testing::frequency_oracle(pr.p, pr.h);
    match += letter(v.f) == expected;
    ++tally[expected];
    const auto swapped = ep::classify_frequency(pr.hypothesis, pr.premise, store, options);
    antisym += swapped.f == mirrored(v.f);
    bool same = true;
    for (const auto& s : scaled) {
      same = same && ep::classify_frequency(pr.premise, pr.hypothesis, s, options).f == v.f;
    }
    scale += same;
  }
  o.note(fmt::format("{} pairs: {} at ratios 4.99/5.0/5.01, {} with zeros; oracle W={} L={} D={}",
                     pairs.size(), boundary, zeros, tally['W'], tally['L'], tally['D']));
  o.check(match == pairs.size(), fmt::format("{}/{} match the exact oracle", match, pairs.size()));
  o.check(antisym == pairs.size(),
          fmt::format("{}/{} anti-symmetric under swap", antisym, pairs.size()));
  o.check(scale == pairs.size(),
          fmt::format("{}/{} invariant under scaling by 1/8, 2, 1024", scale, pairs.size()));
  return o;
}

// ---------------------------------------------------------------- 5
Outcome transformation_contracts() {
  Outcome o;
  const auto corpus = ep::testing::make_corpus({.pairs = 25, .seed = kSeed});
  const auto& base = corpus.samples;
  o.note(fmt::format("fixture: {} samples", base.size()));
  const auto pool = ep::build_predicate_pool(corpus.dev);
  const ep::EntityIndex index(corpus.entities);
  const ep::Seed seed{kSeed};
  std::map<std::string, const ep::NLISample*> by_id;
  for (const auto& s : base) by_id[s.id] = &s;

  const auto rp = ep::transform_random_premise(base, pool, seed);
  const auto rpta = ep::compose_rp_ta(base, pool, seed);
  size_t no_entail = 0, rp_total = 0;
  for (const auto* r : {&rp, &rpta}) {
    for (const auto& s : r->samples) {
      ++rp_total;
      no_entail += s.gold == ep::Label::kNoEntail;
    }
  }
  o.check(rp_total > 0 && no_entail == rp_total,
          fmt::format("I_RP/I_RP_TA: {}/{} NoEntail", no_entail, rp_total));

  size_t sig_total = 0, sig_ok = 0;
  for (const auto& s : rp.samples) {
    const auto& orig = *by_id.at(s.id);
    ++sig_total;
    sig_ok += ep::TypeSignature::of(s.premise) == ep::TypeSignature::of(orig.premise) &&
              s.premise.template_text() != orig.premise.template_text();
  }

  const auto ta = ep::transform_type_args(base);
  size_t gold_total = 0, gold_ok = 0;
  for (const auto& s : ta) {
    ++gold_total;
    gold_ok += s.gold == by_id.at(s.id)->gold;
  }
  size_t pair_total = 0, pair_ok = 0;
  for (const auto band : {ep::FrequencyBand::kLow5Pct, ep::FrequencyBand::kHigh5Pct}) {
    const auto ra = ep::transform_random_args(base, index, band, seed);
    o.check(ep::check_pairing(ra.samples).empty(),
            fmt::format("I_RA_{} pairing intact", ep::to_string(band)));
    std::map<std::string, std::map<std::string, std::set<std::string>>> mapping;
    for (const auto& s : ra.samples) {
      const auto& orig = *by_id.at(s.id);
      ++gold_total;
      gold_ok += s.gold == orig.gold;
      const std::pair<const ep::ArgumentSlot*, const ep::ArgumentSlot*> slots[] = {
          {&orig.premise.arg_x(), &s.premise.arg_x()}, {&orig.premise.arg_y(), &s.premise.arg_y()},
          {&orig.hypothesis.arg_x(), &s.hypothesis.arg_x()},
          {&orig.hypothesis.arg_y(), &s.hypothesis.arg_y()}};
      for (const auto& [from, to] : slots) {
        ++sig_total;
        const auto band_records = index.band(from->etype, band);
        const bool in_band = std::any_of(band_records.begin(), band_records.end(),
                                         [&](const auto& r) { return r.surface == to->surface; });
        sig_ok += to->etype == from->etype && in_band;
        mapping[s.pair_id][from->surface + "\x1f" + from->etype].insert(to->surface);
      }
    }
    for (const auto& [pair_id, m] : mapping) {
      ++pair_total;
      pair_ok += std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second.size() == 1; });
    }
  }
  o.check(gold_ok == gold_total, fmt::format("I_TA/I_RA gold preserved {}/{}", gold_ok, gold_total));
  o.check(sig_ok == sig_total,
          fmt::format("type signatures preserved on {}/{} replacements", sig_ok, sig_total));
  o.check(pair_ok == pair_total,
          fmt::format("pair-consistent mappings {}/{} pair_ids", pair_ok, pair_total));

  ep::testing::TempDir dir;
  ep::testing::write_corpus(corpus, dir / "data");
  std::vector<std::map<std::string, std::string>> runs;
  for (int i = 0; i < 3; ++i) {
    const int code = run_cli(dir.path(),
                             fmt::format("transform --dataset data/dataset.tsv --dev_pool "
                                         "data/dev.tsv --entity_index data/entities.tsv "
                                         "--variants I I_RP I_TA I_RA_low I_RA_high I_RP_TA "
                                         "--seed {} --out run{}",
                                         kSeed, i));
    if (code != 0) {
      o.check(false, fmt::format("transform run {} exited {}", i, code));
      return o;
    }
    runs.push_back(snapshot(dir / fmt::format("run{}/datasets", i)));
  }
  o.check(runs[0].size() == 7 && runs[0] == runs[1] && runs[1] == runs[2],
          fmt::format("{} dataset files byte-identical across 3 runs", runs[0].size()));
  return o;
}

// ---------------------------------------------------------------- 6
ep::ScoredPrediction scored(int i, bool gold, ep::ParsedChoice c, double s_tok) {
  ep::ScoredPrediction p;
  p.sample_id = std::to_string(i);
  p.choice = c;
  p.predicted = c == ep::ParsedChoice::kA ? ep::Label::kEntail : ep::Label::kNoEntail;
  p.s_ent = ep::entailment_score(c, s_tok);
  p.gold = gold ? ep::Label::kEntail : ep::Label::kNoEntail;
  return p;
}

Outcome pr_oracle() {
  Outcome o;
  std::mt19937_64 gen(kSeed);
  const ep::ParsedChoice choices[] = {ep::ParsedChoice::kA, ep::ParsedChoice::kB,
                                      ep::ParsedChoice::kC};
  size_t instances = 0, exact = 0;
  while (instances < 200) {
    std::vector<ep::ScoredPrediction> preds;
    size_t pos = 0;
    for (int i = 0; i < 8; ++i) {
      const bool gold = gen() % 2;
      pos += gold;
      preds.push_back(scored(i, gold, choices[gen() % 3], static_cast<double>(gen() % 5) / 4.0));
    }
    if (pos == 0 || pos == 8) continue;
    ++instances;
    std::vector<std::pair<double, bool>> pairs;
    for (const auto& p : preds) pairs.emplace_back(*p.s_ent, p.gold == ep::Label::kEntail);
    const auto oracle = ep::testing::pr_oracle(pairs);
    const auto curve = ep::pr_curve(preds);
    // Exact: every point is the correctly rounded value of the rational one,
    // and the areas agree to the last few ulps of their summation.
    bool same = curve.points.size() == oracle.points.size();
    for (size_t k = 0; same && k < oracle.points.size(); ++k) {
      same = curve.points[k].recall == static_cast<double>(oracle.points[k].first) &&
             curve.points[k].precision == static_cast<double>(oracle.points[k].second);
    }
    same = same && std::abs(curve.auc - static_cast<double>(oracle.auc)) <= 1e-15 &&
           std::abs(curve.auc_norm - static_cast<double>(oracle.auc_norm)) <= 1e-14;
    exact += same;
  }
  o.check(exact == instances,
          fmt::format("{}/{} random 8-sample instances equal the oracle", exact, instances));

  std::vector<ep::ScoredPrediction> perfect;
  for (int i = 0; i < 100; ++i) {
    // s_tok stays above 0 so no negative ties with a positive at 0.5.
    perfect.push_back(scored(i, i < 30, i < 30 ? ep::ParsedChoice::kA : ep::ParsedChoice::kB,
                             (i % 30 + 1) / 31.0));
  }
  const double top = ep::pr_curve(perfect).auc_norm;
  o.check(top == 1.0, fmt::format("perfect ranking auc_norm = {}", top));

  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sum = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<ep::ScoredPrediction> preds;
    for (int i = 0; i < 2000; ++i) {
      preds.push_back(scored(i, false, gen() % 2 ? ep::ParsedChoice::kA : ep::ParsedChoice::kB,
                             u(gen)));
    }
    // Shuffle a fixed 30% positive label vector across the scores.
    std::vector<bool> labels(preds.size(), false);
    std::fill(labels.begin(), labels.begin() + 600, true);
    std::shuffle(labels.begin(), labels.end(), gen);
    for (size_t i = 0; i < preds.size(); ++i) {
      preds[i].gold = labels[i] ? ep::Label::kEntail : ep::Label::kNoEntail;
    }
    sum += ep::pr_curve(preds).auc_norm;
  }
  const double mean = sum / 50;
  o.check(std::abs(mean) <= kShuffleTolerance,
          fmt::format("shuffled labels: mean auc_norm {:+.4f} over 50 trials at n=2000", mean));
  return o;
}

// ---------------------------------------------------------------- 7
Outcome consistency_direction(const fs::path& data) {
  Outcome o;
  const fs::path cwd = data.parent_path();
  std::string log;
  const int code =
      run_cli(cwd,
              fmt::format("all --dataset {} --variants I --backends sim --seed {} "
                          "--sim_mode veracity_only --sim_p_vtrue 0.776 --sim_p_vother 0.636 "
                          "--out consistency",
                          (data / "dataset.tsv").string(), kSeed),
              &log);
  if (code != 0) {
    o.check(false, fmt::format("entail-probe all exited {}: {}", code, log));
    return o;
  }
  const auto report = nlohmann::json::parse(read_file(cwd / "consistency/report/report.json"));
  for (const auto& r : report["results"]) {
    if (r["backend"] != "sim" || r["variant"] != "I") continue;
    const auto& c = r["consistency"];
    if (c["V_C"]["auc_norm"].is_null() || c["V_A"]["auc_norm"].is_null()) {
      o.check(false, "V_C and V_A curves exist");
      return o;
    }
    const double vc = c["V_C"]["auc_norm"], va = c["V_A"]["auc_norm"];
    o.check(vc - va > kConsistencyGap,
            fmt::format("GPT-3.5 I veracity row, n={}: AUC_norm V_C {:.3f} (n={}) - V_A {:.3f} "
                        "(n={}) = {:.3f} > {}",
                        r["n"].get<size_t>(), vc, c["V_C"]["n"].get<size_t>(), va,
                        c["V_A"]["n"].get<size_t>(), vc - va, kConsistencyGap));
    return o;
  }
  o.check(false, "report has a sim/I result");
  return o;
}

// ---------------------------------------------------------------- 8
Outcome golden_prompts() {
  Outcome o;
  const std::string dir = ENTAILPROBE_SOURCE_DIR "/tests/fixtures/golden/";
  auto sample = [](const char* prem, const char* hyp, const char* x, const char* y) {
    return ep::NLISample{"g", "g", ep::Direction::kForward,
                         ep::Proposition(prem, {x, "thing", ep::SlotId::kX}, {y, "thing", ep::SlotId::kY}),
                         ep::Proposition(hyp, {x, "thing", ep::SlotId::kX}, {y, "thing", ep::SlotId::kY}),
                         ep::Label::kEntail, ep::TaskVariant::kI};
  };
  const auto kanamycin =
      sample("{X} kills {Y}", "{X} is useful in {Y}", "kanamycin", "infections");
  const auto ephedrine =
      sample("{X} is widely used in {Y}", "{X} is used in {Y}", "ephedrine", "medicine");
  const auto& few = ep::FewShotBlock::default_inference();
  const std::pair<const char*, std::string> cases[] = {
      {"zero_shot_kanamycin.txt",
       ep::render_inference_prompt(kanamycin, ep::prompt_template(1), nullptr, false).text},
      {"few_shot_ephedrine.txt",
       ep::render_inference_prompt(ephedrine, ep::prompt_template(1), &few, false).text},
      {"ignore_veracity_ephedrine.txt",
       ep::render_inference_prompt(ephedrine, ep::prompt_template(1), &few, true).text},
      {"veracity_ephedrine.txt", ep::render_veracity_prompt(ephedrine.hypothesis).text},
  };
  for (const auto& [file, text] : cases) {
    o.check(read_file(dir + file) == text, fmt::format("{} byte-identical", file));
  }
  return o;
}

// ---------------------------------------------------------------- 9
Outcome end_to_end(const fs::path& data) {
  Outcome o;
  const fs::path cwd = data.parent_path();
  const std::string common = fmt::format(
      "all --dataset {0}/dataset.tsv --dev_pool {0}/dev.tsv --entity_index {0}/entities.tsv "
      "--ngram_dump {0}/ngram_dump.tsv --ngram_totals {0}/ngram_totals.tsv "
      "--variants I I_RP I_TA I_RA_low I_RA_high I_RP_TA --backends sim --seed {1} "
      "--sim_mode mixed --sim_p_vtrue 0.776 --sim_p_vother 0.636 --sim_p_fwin 0.238 "
      "--sim_p_flose 0.140",
      data.string(), kSeed);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::map<std::string, std::string>> reports;
  for (int i = 0; i < 2; ++i) {
    std::string log;
    const int code = run_cli(cwd, fmt::format("{} --out e2e{}", common, i), &log);
    if (code != 0) {
      o.check(false, fmt::format("run {} exited {}: {}", i, code, log));
      return o;
    }
    reports.push_back(snapshot(cwd / fmt::format("e2e{}/report", i)));
  }
  const double elapsed = seconds_since(t0);
  const auto datasets = ep::tsv::read_lines(data / "dataset.tsv").size() - 2;
  o.note(fmt::format("{} samples x 6 variants, {} report files", datasets, reports[0].size()));
  o.check(!reports[0].empty() && reports[0] == reports[1], "report directories byte-identical");
  o.check(elapsed / 2 < kEndToEndSeconds,
          fmt::format("{:.2f}s per run < {}s", elapsed / 2, kEndToEndSeconds));
  return o;
}

}  // namespace

int main() {
  ep::testing::TempDir work;
  const fs::path data = work / "data";
  ep::testing::write_corpus(
      ep::testing::make_corpus({.pairs = kRecoveryPairs, .dev_pairs = 200, .seed = kSeed}), data);
  const RecoveryCorpus rc = recovery_corpus();

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"formula exactness", formula_exactness},
      {"simulator recovery (veracity)", [&] { return veracity_recovery(rc); }},
      {"simulator recovery (frequency)", [&] { return frequency_recovery(rc); }},
      {"frequency classifier", frequency_classifier},
      {"transformation contracts", transformation_contracts},
      {"PR/AUC oracle", pr_oracle},
      {"consistency-subset direction", [&] { return consistency_direction(data); }},
      {"golden prompts", golden_prompts},
      {"end-to-end determinism", [&] { return end_to_end(data); }},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, fmt::format("exception: {}", e.what()));
    }
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("{} {}. {} ({:.2f}s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, seconds_since(t0));
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
  }
  std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failures,
                           criteria.size());
  return failures == 0 ? 0 : 1;
}
