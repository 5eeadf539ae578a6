// Copyright 2026 The adapteval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace adapteval::judge {

struct Decoding {
  double temperature = 0.0;
  int max_tokens = 1024;
  std::optional<std::int64_t> seed = 42;
};

/// Wire-level request: {model, prompt, temperature, max_tokens, seed?}.
/// `attempt` > 0 marks a re-query; it is part of the cache key and offsets
/// the seed so a re-query is not served the same response.
struct CompletionRequest {
  std::string model;
  std::string prompt;
  Decoding decoding;
  int attempt = 0;

  nlohmann::ordered_json to_json() const;
};

/// A model endpoint. Subclasses implement do_complete; callers go through
/// complete() so request construction is uniform.
class CompletionBackend {
 public:
  CompletionBackend(std::string model_id, Decoding decoding);
  virtual ~CompletionBackend() = default;

  CompletionBackend(const CompletionBackend&) = delete;
  CompletionBackend& operator=(const CompletionBackend&) = delete;

  const std::string& model_id() const { return model_id_; }
  const Decoding& decoding() const { return decoding_; }

  CompletionRequest make_request(std::string prompt, int attempt = 0) const;

  /// Thread-safe if the subclass's do_complete is.
  std::string complete(const CompletionRequest& request) { return do_complete(request); }

 private:
  virtual std::string do_complete(const CompletionRequest& request) = 0;

  std::string model_id_;
  Decoding decoding_;
};

/// Backend driven by a callable; the basis for test doubles.
class FunctionBackend : public CompletionBackend {
 public:
  using Fn = std::function<std::string(const CompletionRequest&)>;
  FunctionBackend(std::string model_id, Fn fn, Decoding decoding = {});

  std::size_t call_count() const { return calls_.load(); }

 private:
  std::string do_complete(const CompletionRequest& request) override;

  Fn fn_;
  std::atomic<std::size_t> calls_{0};
};

/// Returns canned text keyed by exact prompt; unknown prompts go to the
/// fallback or fail with a non-transient TransportError (status 404).
class CannedBackend : public CompletionBackend {
 public:
  CannedBackend(std::string model_id, std::map<std::string, std::string> canned,
                FunctionBackend::Fn fallback = nullptr, Decoding decoding = {});

  std::size_t call_count() const { return calls_.load(); }

 private:
  std::string do_complete(const CompletionRequest& request) override;

  std::map<std::string, std::string> canned_;
  FunctionBackend::Fn fallback_;
  std::atomic<std::size_t> calls_{0};
};

struct RetryPolicy {
  int max_retries = 2;
  std::chrono::milliseconds base_backoff{500};
};

/// On-disk response store: one `<sha256>.json` file per request holding
/// {"request": {...}, "response": {"text": ...}}. Safe for concurrent use
/// within and across processes (writes are atomic renames). Credentials are
/// never part of the request and so never reach disk.
class ResponseCache {
 public:
  /// An empty path disables persistence (every lookup misses).
  explicit ResponseCache(std::filesystem::path dir = {});

  static std::string key(const CompletionRequest& request);

  /// Throws CacheError if the entry exists but is unreadable or belongs to
  /// a different request.
  std::optional<std::string> lookup(const CompletionRequest& request) const;
  void store(const CompletionRequest& request, const std::string& text) const;

  const std::filesystem::path& dir() const { return dir_; }
  bool enabled() const { return !dir_.empty(); }

 private:
  std::filesystem::path entry_path(const std::string& key) const;

  std::filesystem::path dir_;
};

struct CallCounters {
  std::atomic<std::size_t> cache_hits{0};
  std::atomic<std::size_t> network_calls{0};
  std::atomic<std::size_t> retries{0};
};

struct CompletionResult {
  std::string text;
  bool from_cache = false;
};

/// Serves `prompt` from the cache when possible, otherwise calls the backend,
/// retrying transient TransportErrors with exponential backoff, and stores the
/// response. Rethrows the last TransportError once retries are exhausted.
CompletionResult complete(CompletionBackend& backend, const std::string& prompt,
                          const ResponseCache& cache, const RetryPolicy& policy = {},
                          int attempt = 0, CallCounters* counters = nullptr);

}  // namespace adapteval::judge
