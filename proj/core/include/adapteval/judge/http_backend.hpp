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

#include <chrono>
#include <string>

#include "adapteval/judge/backend.hpp"

namespace adapteval::judge {

enum class WireFormat {
  /// POST {model, prompt, temperature, max_tokens, seed?} -> {text}
  Native,
  /// POST an OpenAI-style chat request with the prompt as one user message,
  /// read choices[0].message.content.
  ChatCompletions,
};

std::optional<WireFormat> parse_wire_format(std::string_view name);

struct HttpBackendOptions {
  /// Full URL, e.g. "http://localhost:8000/v1/chat/completions".
  std::string endpoint;
  WireFormat wire_format = WireFormat::ChatCompletions;
  /// Name of the environment variable holding a bearer token; empty for none.
  std::string api_key_env;
  std::chrono::seconds timeout{120};
};

class HttpBackend : public CompletionBackend {
 public:
  HttpBackend(std::string model_id, HttpBackendOptions options, Decoding decoding = {});

  /// Request body for the configured wire format.
  std::string encode(const CompletionRequest& request) const;
  /// Extracts completion text from a 2xx response body.
  std::string decode(const std::string& body) const;

 private:
  std::string do_complete(const CompletionRequest& request) override;

  HttpBackendOptions options_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace adapteval::judge
