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

#include "entailprobe/response_cache.hpp"

#include <chrono>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "entailprobe/digest.hpp"
#include "entailprobe/error.hpp"

namespace entailprobe {
namespace {

using nlohmann::json;

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read cache {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

}  // namespace

std::string cache_key(const std::string& backend_id, const BackendRequest& req,
                      bool per_sample) {
  std::string material = backend_id;
  material.push_back('\x1f');
  material.append(req.prompt.text);
  material.push_back('\x1f');
  material.append(fmt::format("max_tokens={};temperature={}", req.max_tokens,
                              req.temperature));
  if (per_sample) {
    material.append(fmt::format("\x1fsample={}:{}:{}", to_string(req.prompt.kind),
                                to_string(req.prompt.variant), req.prompt.sample_id));
  }
  return sha256_hex(material);
}

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  if (std::filesystem::exists(path_)) {
    std::string text = read_all(path_);
    if (!text.empty() && text.back() != '\n') {
      const size_t last = text.rfind('\n');
      const size_t keep = last == std::string::npos ? 0 : last + 1;
      text.resize(keep);
      std::filesystem::resize_file(path_, keep);
    }
    size_t line_no = 0;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const json j = json::parse(line);
        const json& r = j.at("response");
        Entry e;
        e.backend_id = r.at("backend_id").get<std::string>();
        e.raw_text = r.at("raw_text").get<std::string>();
        if (!r.at("s_tok").is_null()) e.s_tok = r.at("s_tok").get<double>();
        entries_.try_emplace(j.at("key").get<std::string>(), std::move(e));
      } catch (const json::exception& ex) {
        throw DataError(fmt::format("{}:{}: malformed cache record: {}",
                                    path_.string(), line_no, ex.what()));
      }
    }
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw DataError(fmt::format("cannot open cache {} for writing", path_.string()));
}

std::optional<ModelResponse> ResponseCache::lookup(const std::string& key) const {
  std::lock_guard lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return ModelResponse{
      .raw_text = it->second.raw_text,
      .choice = ParsedChoice::kUnparsed,
      .s_tok = it->second.s_tok,
      .backend_id = it->second.backend_id,
      .cached = true,
  };
}

void ResponseCache::store(const std::string& key, const BackendRequest& req,
                          const ModelResponse& response) {
  json r = {{"backend_id", response.backend_id}, {"raw_text", response.raw_text}};
  r["s_tok"] = response.s_tok ? json(*response.s_tok) : json(nullptr);
  const json record = {{"key", key},
                       {"request_digest", sha256_hex(req.prompt.text)},
                       {"response", r},
                       {"timestamp", utc_timestamp()}};
  const std::string line = record.dump() + "\n";

  std::lock_guard lock(mu_);
  if (entries_.count(key)) return;
  out_ << line;
  out_.flush();
  if (!out_) throw DataError(fmt::format("failed writing cache {}", path_.string()));
  entries_.emplace(key, Entry{response.backend_id, response.raw_text, response.s_tok});
}

size_t ResponseCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::string ResponseCache::content_digest() const {
  std::lock_guard lock(mu_);
  std::string material;
  for (const auto& [key, e] : entries_) {
    material.append(key).push_back('\x1f');
    material.append(e.backend_id).push_back('\x1f');
    material.append(e.raw_text).push_back('\x1f');
    material.append(e.s_tok ? fmt::format("{}", *e.s_tok) : "null").push_back('\n');
  }
  return sha256_hex(material);
}

}  // namespace entailprobe
