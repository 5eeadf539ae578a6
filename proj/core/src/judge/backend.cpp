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

#include "adapteval/judge/backend.hpp"

#include <thread>

#include "adapteval/error.hpp"
#include "adapteval/util/hash.hpp"
#include "adapteval/util/io.hpp"

namespace adapteval::judge {

using ojson = nlohmann::ordered_json;

ojson CompletionRequest::to_json() const {
  ojson j;
  j["model"] = model;
  j["prompt"] = prompt;
  j["temperature"] = decoding.temperature;
  j["max_tokens"] = decoding.max_tokens;
  if (decoding.seed) j["seed"] = *decoding.seed + attempt;
  if (attempt > 0) j["attempt"] = attempt;
  return j;
}

CompletionBackend::CompletionBackend(std::string model_id, Decoding decoding)
    : model_id_(std::move(model_id)), decoding_(decoding) {
  if (decoding_.temperature < 0) throw std::invalid_argument("temperature must be >= 0");
  if (decoding_.max_tokens <= 0) throw std::invalid_argument("max_tokens must be > 0");
}

CompletionRequest CompletionBackend::make_request(std::string prompt, int attempt) const {
  return {model_id_, std::move(prompt), decoding_, attempt};
}

FunctionBackend::FunctionBackend(std::string model_id, Fn fn, Decoding decoding)
    : CompletionBackend(std::move(model_id), decoding), fn_(std::move(fn)) {}

std::string FunctionBackend::do_complete(const CompletionRequest& request) {
  ++calls_;
  return fn_(request);
}

CannedBackend::CannedBackend(std::string model_id, std::map<std::string, std::string> canned,
                             FunctionBackend::Fn fallback, Decoding decoding)
    : CompletionBackend(std::move(model_id), decoding),
      canned_(std::move(canned)),
      fallback_(std::move(fallback)) {}

std::string CannedBackend::do_complete(const CompletionRequest& request) {
  ++calls_;
  if (auto it = canned_.find(request.prompt); it != canned_.end()) return it->second;
  if (fallback_) return fallback_(request);
  throw TransportError("no canned response for prompt", 404, false);
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string ResponseCache::key(const CompletionRequest& request) {
  return util::sha256_hex(request.to_json().dump());
}

std::filesystem::path ResponseCache::entry_path(const std::string& key) const {
  return dir_ / (key + ".json");
}

std::optional<std::string> ResponseCache::lookup(const CompletionRequest& request) const {
  if (!enabled()) return std::nullopt;
  const auto k = key(request);
  const auto path = entry_path(k);
  if (!std::filesystem::exists(path)) return std::nullopt;
  ojson entry;
  try {
    entry = ojson::parse(util::read_file(path));
  } catch (const std::exception& e) {
    throw CacheError("corrupt cache entry " + path.string() + ": " + e.what());
  }
  if (!entry.is_object() || !entry.contains("request") || !entry.contains("response") ||
      !entry["response"].is_object() || !entry["response"].contains("text") ||
      !entry["response"]["text"].is_string()) {
    throw CacheError("malformed cache entry " + path.string());
  }
  if (entry["request"] != request.to_json()) {
    throw CacheError("cache entry " + path.string() + " does not match its request");
  }
  return entry["response"]["text"].get<std::string>();
}

void ResponseCache::store(const CompletionRequest& request, const std::string& text) const {
  if (!enabled()) return;
  ojson entry;
  entry["request"] = request.to_json();
  entry["response"]["text"] = text;
  util::write_file_atomic(entry_path(key(request)), entry.dump(2) + "\n");
}

CompletionResult complete(CompletionBackend& backend, const std::string& prompt,
                          const ResponseCache& cache, const RetryPolicy& policy, int attempt,
                          CallCounters* counters) {
  const auto request = backend.make_request(prompt, attempt);
  if (auto hit = cache.lookup(request)) {
    if (counters) ++counters->cache_hits;
    return {std::move(*hit), true};
  }
  for (int tries = 0;; ++tries) {
    try {
      if (counters) ++counters->network_calls;
      std::string text = backend.complete(request);
      cache.store(request, text);
      return {std::move(text), false};
    } catch (const TransportError& e) {
      if (!e.transient() || tries >= policy.max_retries) throw;
      if (counters) ++counters->retries;
      std::this_thread::sleep_for(policy.base_backoff * (1 << std::min(tries, 10)));
    }
  }
}

}  // namespace adapteval::judge
