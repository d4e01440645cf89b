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

#include "entailprobe/backend.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>

#include "entailprobe/response_cache.hpp"

namespace entailprobe {

void BackendRequest::validate() const {
  if (!(temperature >= 0.0)) {
    throw ConfigError(fmt::format("temperature must be >= 0, got {}", temperature));
  }
  if (max_tokens < 1) {
    throw ConfigError(fmt::format("max_tokens must be >= 1, got {}", max_tokens));
  }
  if (prompt.text.empty()) {
    throw ConfigError(fmt::format("empty prompt for sample '{}'", prompt.sample_id));
  }
}

ModelResponse query(Backend& backend, const BackendRequest& req,
                    ResponseCache* cache) {
  req.validate();
  std::string key;
  if (cache) {
    key = cache_key(backend.id(), req, backend.per_sample());
    if (auto hit = cache->lookup(key)) {
      hit->choice = parse_answer(hit->raw_text, req.prompt.kind);
      return *std::move(hit);
    }
  }
  RawCompletion raw = backend.complete(req);
  if (raw.s_tok && !(*raw.s_tok >= 0.0 && *raw.s_tok <= 1.0)) {
    throw BackendError(fmt::format("backend '{}' returned s_tok {} outside [0, 1]",
                                   backend.id(), *raw.s_tok));
  }
  ModelResponse response{
      .raw_text = std::move(raw.text),
      .choice = ParsedChoice::kUnparsed,
      .s_tok = raw.s_tok,
      .backend_id = backend.id(),
      .cached = false,
  };
  response.choice = parse_answer(response.raw_text, req.prompt.kind);
  if (cache) cache->store(key, req, response);
  return response;
}

std::vector<QueryOutcome> query_all(Backend& backend,
                                    std::span<const BackendRequest> requests,
                                    ResponseCache* cache,
                                    size_t max_in_flight) {
  // Identical requests are sent once and share the outcome of their first
  // occurrence, so the result never depends on which duplicate finished first.
  std::vector<size_t> unique;
  std::vector<size_t> source(requests.size());
  std::unordered_map<std::string, size_t> first;
  for (size_t i = 0; i < requests.size(); ++i) {
    const auto [it, inserted] = first.emplace(cache_key(backend.id(), requests[i], backend.per_sample()), i);
    if (inserted) unique.push_back(i);
    source[i] = it->second;
  }

  std::vector<QueryOutcome> out(requests.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < unique.size(); k = next++) {
      const size_t i = unique[k];
      try {
        out[i].response = query(backend, requests[i], cache);
      } catch (const Error& e) {
        out[i].error = e.what();
        out[i].error_code = e.exit_code();
      } catch (const std::exception& e) {
        out[i].error = e.what();
        out[i].error_code = ExitCode::kBackend;
      }
    }
  };
  const size_t n = std::clamp<size_t>(max_in_flight, 1, std::max<size_t>(unique.size(), 1));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(n);
    for (size_t t = 0; t < n; ++t) threads.emplace_back(worker);
  }
  for (size_t i = 0; i < requests.size(); ++i) {
    if (source[i] == i) continue;
    out[i] = out[source[i]];
    if (out[i].response) out[i].response->cached = true;
  }
  return out;
}

}  // namespace entailprobe
