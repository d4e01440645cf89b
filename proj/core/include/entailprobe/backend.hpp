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

// Uniform contract for answering rendered prompts.

#ifndef ENTAILPROBE_BACKEND_HPP_
#define ENTAILPROBE_BACKEND_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entailprobe/error.hpp"
#include "entailprobe/prompt.hpp"

namespace entailprobe {

class ResponseCache;

struct BackendRequest {
  RenderedPrompt prompt;
  int max_tokens = 16;
  double temperature = 0.0;
  std::string run_id;

  // Throws ConfigError when temperature < 0, max_tokens < 1 or the prompt
  // text is empty.
  void validate() const;
  const std::string& sample_id() const { return prompt.sample_id; }
};

// What a backend produced before answer parsing.
struct RawCompletion {
  std::string text;
  // Probability of the answer-letter token, when the endpoint reports it.
  std::optional<double> s_tok;
};

struct ModelResponse {
  std::string raw_text;
  ParsedChoice choice = ParsedChoice::kUnparsed;
  std::optional<double> s_tok;
  std::string backend_id;
  bool cached = false;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual const std::string& id() const = 0;
  // Produces a completion without consulting any cache. Must be safe to call
  // from several threads at once. Throws BackendError on failure.
  virtual RawCompletion complete(const BackendRequest& req) = 0;
  // True when the answer depends on the request's sample identity and not
  // only on the prompt text. Such requests are never shared in the cache.
  virtual bool per_sample() const { return false; }
};

// Looks the request up in `cache` (may be null) and otherwise calls the
// backend, parses the answer and persists the response before returning.
// Throws BackendError when s_tok is outside [0, 1].
ModelResponse query(Backend& backend, const BackendRequest& req,
                    ResponseCache* cache);

struct QueryOutcome {
  std::optional<ModelResponse> response;
  std::string error;  // set when response is empty
  ExitCode error_code = ExitCode::kOk;
};

// Issues every request with at most `max_in_flight` outstanding calls.
// Results come back in request order regardless of completion order; a
// failed request is recorded in its outcome instead of aborting the batch.
// Requests with the same cache key are sent once; later copies reuse the
// first one's outcome and are marked cached.
std::vector<QueryOutcome> query_all(Backend& backend,
                                    std::span<const BackendRequest> requests,
                                    ResponseCache* cache,
                                    size_t max_in_flight);

}  // namespace entailprobe

#endif  // ENTAILPROBE_BACKEND_HPP_
