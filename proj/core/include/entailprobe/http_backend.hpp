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

// Generic JSON completion endpoint driven by an adapter config file:
//
//   {
//     "backend_id": "gpt35",
//     "base_url": "https://api.example.com",
//     "path": "/v1/completions",
//     "auth_env": "EXAMPLE_API_KEY",          // optional
//     "auth_header": "Authorization",         // default
//     "auth_prefix": "Bearer ",               // default
//     "request": {
//       "prompt_field": "prompt",
//       "max_tokens_field": "max_tokens",
//       "temperature_field": "temperature",
//       "extra": {"model": "text-davinci-003", "logprobs": 1}
//     },
//     "response": {
//       "text_pointer": "/choices/0/text",
//       "s_tok_pointer": "/choices/0/answer_logprob",   // optional
//       "s_tok_kind": "logprob"                         // or "prob"
//     },
//     "retry": {"max_attempts": 5, "initial_backoff_ms": 500,
//               "max_backoff_ms": 16000},
//     "rate_limit": {"min_interval_ms": 0},
//     "timeout_ms": 60000
//   }
//
// Credentials are read from the environment at request time and never
// written anywhere.

#ifndef ENTAILPROBE_HTTP_BACKEND_HPP_
#define ENTAILPROBE_HTTP_BACKEND_HPP_

#include <chrono>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "entailprobe/backend.hpp"

namespace entailprobe {

struct HttpBackendConfig {
  std::string backend_id;
  std::string base_url;
  std::string path = "/v1/completions";
  std::string auth_env;
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";

  std::string prompt_field = "prompt";
  std::string max_tokens_field = "max_tokens";
  std::string temperature_field = "temperature";
  std::string extra_json = "{}";  // merged into every request body

  std::string text_pointer = "/text";
  std::string s_tok_pointer;  // empty: endpoint reports no probability
  bool s_tok_is_logprob = true;

  int max_attempts = 5;
  int initial_backoff_ms = 500;
  int max_backoff_ms = 16000;
  int min_interval_ms = 0;
  int timeout_ms = 60000;

  // Throws ConfigError naming the offending field.
  static HttpBackendConfig parse(std::string_view json_text, std::string_view source);
  static HttpBackendConfig load(const std::filesystem::path& path);
};

class HttpBackend : public Backend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit HttpBackend(HttpBackendConfig config, Sleeper sleeper = {});

  const std::string& id() const override { return config_.backend_id; }
  RawCompletion complete(const BackendRequest& req) override;

  const HttpBackendConfig& config() const { return config_; }

 private:
  void pace();

  HttpBackendConfig config_;
  Sleeper sleep_;
  std::mutex pace_mu_;
  std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace entailprobe

#endif  // ENTAILPROBE_HTTP_BACKEND_HPP_
