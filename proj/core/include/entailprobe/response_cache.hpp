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

// Append-only response cache stored as JSON lines:
//
//   {"key": "<sha256>", "request_digest": "<sha256>",
//    "response": {"backend_id": ..., "raw_text": ..., "s_tok": 0.91 | null},
//    "timestamp": "2026-01-01T00:00:00Z"}
//
// key = sha256(backend_id 0x1f prompt_text 0x1f "max_tokens=<n>;temperature=<t>")
// request_digest = sha256(prompt_text)
//
// An incomplete last line (left by an interrupted writer) is dropped when the
// file is opened. Other malformed lines are a DataError.

#ifndef ENTAILPROBE_RESPONSE_CACHE_HPP_
#define ENTAILPROBE_RESPONSE_CACHE_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "entailprobe/backend.hpp"

namespace entailprobe {

// sha256 over backend id, prompt text and generation settings. Backends
// whose answers depend on the sample rather than the prompt also mix in the
// prompt kind, variant and sample id.
std::string cache_key(const std::string& backend_id, const BackendRequest& req,
                      bool per_sample = false);

class ResponseCache {
 public:
  // Opens (creating if needed) the cache file.
  explicit ResponseCache(std::filesystem::path path);

  ResponseCache(const ResponseCache&) = delete;
  ResponseCache& operator=(const ResponseCache&) = delete;

  // Returned responses have cached = true.
  std::optional<ModelResponse> lookup(const std::string& key) const;
  // Appends and flushes. A key already present is left untouched.
  void store(const std::string& key, const BackendRequest& req,
             const ModelResponse& response);

  size_t size() const;
  const std::filesystem::path& path() const { return path_; }

  // SHA-256 over the sorted (key, backend_id, raw_text, s_tok) entries.
  // Timestamps and line order do not affect it.
  std::string content_digest() const;

 private:
  struct Entry {
    std::string backend_id;
    std::string raw_text;
    std::optional<double> s_tok;
  };

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::map<std::string, Entry> entries_;
  std::ofstream out_;
};

}  // namespace entailprobe

#endif  // ENTAILPROBE_RESPONSE_CACHE_HPP_
