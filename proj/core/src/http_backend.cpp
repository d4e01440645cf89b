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

#include "entailprobe/http_backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "entailprobe/error.hpp"

namespace entailprobe {
namespace {

using nlohmann::json;

constexpr size_t kBodySnippet = 200;

template <typename T>
void read_opt(const json& obj, const char* field, T& out, std::string_view source) {
  if (!obj.contains(field)) return;
  try {
    out = obj.at(field).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("{}: field '{}' has the wrong type", source, field));
  }
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    std::string_view where, std::string_view source) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ConfigError(fmt::format("{}: unknown field '{}{}'", source, where, k));
    }
  }
}

std::string snippet(const std::string& body) {
  if (body.size() <= kBodySnippet) return body;
  return body.substr(0, kBodySnippet) + "...";
}

// Retry-After as delta-seconds; HTTP-date values fall back to the backoff.
std::optional<std::chrono::milliseconds> retry_after(const httplib::Result& res) {
  if (!res || !res->has_header("Retry-After")) return std::nullopt;
  const std::string v = res->get_header_value("Retry-After");
  char* end = nullptr;
  const double secs = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !(secs >= 0)) return std::nullopt;
  return std::chrono::milliseconds(static_cast<long long>(std::ceil(secs * 1000)));
}

}  // namespace

HttpBackendConfig HttpBackendConfig::parse(std::string_view json_text,
                                           std::string_view source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", source, e.what()));
  }
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected a JSON object", source));
  reject_unknown(j,
                 {"backend_id", "base_url", "path", "auth_env", "auth_header",
                  "auth_prefix", "request", "response", "retry", "rate_limit",
                  "timeout_ms"},
                 "", source);
  HttpBackendConfig c;
  read_opt(j, "backend_id", c.backend_id, source);
  read_opt(j, "base_url", c.base_url, source);
  read_opt(j, "path", c.path, source);
  read_opt(j, "auth_env", c.auth_env, source);
  read_opt(j, "auth_header", c.auth_header, source);
  read_opt(j, "auth_prefix", c.auth_prefix, source);
  read_opt(j, "timeout_ms", c.timeout_ms, source);
  if (j.contains("request")) {
    const json& r = j["request"];
    reject_unknown(r, {"prompt_field", "max_tokens_field", "temperature_field", "extra"},
                   "request.", source);
    read_opt(r, "prompt_field", c.prompt_field, source);
    read_opt(r, "max_tokens_field", c.max_tokens_field, source);
    read_opt(r, "temperature_field", c.temperature_field, source);
    if (r.contains("extra")) {
      if (!r["extra"].is_object()) {
        throw ConfigError(fmt::format("{}: 'request.extra' must be an object", source));
      }
      c.extra_json = r["extra"].dump();
    }
  }
  if (j.contains("response")) {
    const json& r = j["response"];
    reject_unknown(r, {"text_pointer", "s_tok_pointer", "s_tok_kind"}, "response.", source);
    read_opt(r, "text_pointer", c.text_pointer, source);
    read_opt(r, "s_tok_pointer", c.s_tok_pointer, source);
    std::string kind = "logprob";
    read_opt(r, "s_tok_kind", kind, source);
    if (kind != "logprob" && kind != "prob") {
      throw ConfigError(fmt::format(
          "{}: 'response.s_tok_kind' must be \"logprob\" or \"prob\"", source));
    }
    c.s_tok_is_logprob = kind == "logprob";
  }
  if (j.contains("retry")) {
    const json& r = j["retry"];
    reject_unknown(r, {"max_attempts", "initial_backoff_ms", "max_backoff_ms"}, "retry.",
                   source);
    read_opt(r, "max_attempts", c.max_attempts, source);
    read_opt(r, "initial_backoff_ms", c.initial_backoff_ms, source);
    read_opt(r, "max_backoff_ms", c.max_backoff_ms, source);
  }
  if (j.contains("rate_limit")) {
    const json& r = j["rate_limit"];
    reject_unknown(r, {"min_interval_ms"}, "rate_limit.", source);
    read_opt(r, "min_interval_ms", c.min_interval_ms, source);
  }

  if (c.backend_id.empty()) throw ConfigError(fmt::format("{}: 'backend_id' is required", source));
  if (c.base_url.empty()) throw ConfigError(fmt::format("{}: 'base_url' is required", source));
  if (c.max_attempts < 1) throw ConfigError(fmt::format("{}: 'retry.max_attempts' must be >= 1", source));
  if (c.initial_backoff_ms < 0 || c.max_backoff_ms < c.initial_backoff_ms) {
    throw ConfigError(fmt::format("{}: retry backoff bounds are inconsistent", source));
  }
  if (c.min_interval_ms < 0 || c.timeout_ms <= 0) {
    throw ConfigError(fmt::format("{}: rate_limit/timeout values must be positive", source));
  }
  for (const auto* ptr : {&c.text_pointer, &c.s_tok_pointer}) {
    try {
      if (!ptr->empty()) json::json_pointer p(*ptr);
    } catch (const json::exception&) {
      throw ConfigError(fmt::format("{}: invalid JSON pointer '{}'", source, *ptr));
    }
  }
  return c;
}

HttpBackendConfig HttpBackendConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read backend config {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

HttpBackend::HttpBackend(HttpBackendConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleep_(std::move(sleeper)) {
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

void HttpBackend::pace() {
  if (config_.min_interval_ms <= 0) return;
  std::lock_guard lock(pace_mu_);
  const auto interval = std::chrono::milliseconds(config_.min_interval_ms);
  const auto now = std::chrono::steady_clock::now();
  if (now < last_request_ + interval) {
    sleep_(std::chrono::duration_cast<std::chrono::milliseconds>(last_request_ + interval - now));
  }
  last_request_ = std::chrono::steady_clock::now();
}

RawCompletion HttpBackend::complete(const BackendRequest& req) {
  json body = json::parse(config_.extra_json);
  body[config_.prompt_field] = req.prompt.text;
  body[config_.max_tokens_field] = req.max_tokens;
  body[config_.temperature_field] = req.temperature;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!config_.auth_env.empty()) {
    const char* secret = std::getenv(config_.auth_env.c_str());
    if (secret == nullptr || *secret == '\0') {
      throw ConfigError(fmt::format("backend '{}': environment variable {} is not set",
                                    config_.backend_id, config_.auth_env));
    }
    headers.emplace(config_.auth_header, config_.auth_prefix + secret);
  }

  std::vector<std::string> attempts;
  int backoff = config_.initial_backoff_ms;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    pace();
    httplib::Client client(config_.base_url);
    const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    const auto res = client.Post(config_.path, headers, payload, "application/json");

    std::optional<std::chrono::milliseconds> wait;
    if (!res) {
      attempts.push_back(fmt::format("attempt {}: transport error: {}", attempt,
                                     httplib::to_string(res.error())));
    } else if (res->status == 429 || res->status == 503) {
      attempts.push_back(fmt::format("attempt {}: HTTP {}", attempt, res->status));
      wait = retry_after(res);
    } else if (res->status < 200 || res->status >= 300) {
      throw BackendError(fmt::format("backend '{}': HTTP {}: {}", config_.backend_id,
                                     res->status, snippet(res->body)));
    } else {
      json reply;
      try {
        reply = json::parse(res->body);
      } catch (const json::exception&) {
        throw BackendError(fmt::format("backend '{}': response is not JSON: {}",
                                       config_.backend_id, snippet(res->body)));
      }
      RawCompletion out;
      const json::json_pointer text_ptr(config_.text_pointer);
      if (!reply.contains(text_ptr) || !reply.at(text_ptr).is_string()) {
        throw BackendError(fmt::format("backend '{}': no string at '{}' in response: {}",
                                       config_.backend_id, config_.text_pointer,
                                       snippet(res->body)));
      }
      out.text = reply.at(text_ptr).get<std::string>();
      if (!config_.s_tok_pointer.empty()) {
        const json::json_pointer p(config_.s_tok_pointer);
        if (reply.contains(p) && reply.at(p).is_number()) {
          const double v = reply.at(p).get<double>();
          out.s_tok = config_.s_tok_is_logprob ? std::exp(v) : v;
        }
      }
      return out;
    }
    if (attempt == config_.max_attempts) break;
    sleep_(wait ? *wait : std::chrono::milliseconds(backoff));
    backoff = std::min(backoff * 2, config_.max_backoff_ms);
  }
  std::string log;
  for (const auto& a : attempts) log.append("\n  ").append(a);
  throw BackendError(fmt::format("backend '{}': giving up after {} attempts:{}",
                                 config_.backend_id, attempts.size(), log));
}

}  // namespace entailprobe
