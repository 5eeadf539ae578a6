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

#include "adapteval/judge/http_backend.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cstdlib>

#include "adapteval/error.hpp"

namespace adapteval::judge {

using ojson = nlohmann::ordered_json;

std::optional<WireFormat> parse_wire_format(std::string_view name) {
  if (name == "native") return WireFormat::Native;
  if (name == "chat" || name == "chat-completions" || name == "openai-chat") {
    return WireFormat::ChatCompletions;
  }
  return std::nullopt;
}

HttpBackend::HttpBackend(std::string model_id, HttpBackendOptions options, Decoding decoding)
    : CompletionBackend(std::move(model_id), decoding), options_(std::move(options)) {
  const auto& url = options_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint must be an absolute URL: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpBackend::encode(const CompletionRequest& request) const {
  ojson body;
  body["model"] = request.model;
  if (options_.wire_format == WireFormat::Native) {
    body["prompt"] = request.prompt;
  } else {
    body["messages"] = ojson::array({ojson{{"role", "user"}, {"content", request.prompt}}});
  }
  body["temperature"] = request.decoding.temperature;
  body["max_tokens"] = request.decoding.max_tokens;
  if (request.decoding.seed) body["seed"] = *request.decoding.seed + request.attempt;
  return body.dump();
}

std::string HttpBackend::decode(const std::string& body) const {
  ojson j;
  try {
    j = ojson::parse(body);
  } catch (const std::exception& e) {
    throw TransportError(std::string("response is not JSON: ") + e.what(), 200, false);
  }
  try {
    if (options_.wire_format == WireFormat::Native) return j.at("text").get<std::string>();
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const std::exception& e) {
    throw TransportError(std::string("unexpected response shape: ") + e.what(), 200, false);
  }
}

std::string HttpBackend::do_complete(const CompletionRequest& request) {
  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(options_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);

  httplib::Headers headers;
  if (!options_.api_key_env.empty()) {
    if (const char* key = std::getenv(options_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }
  auto res = client.Post(path_, headers, encode(request), "application/json");
  if (!res) {
    throw TransportError("request to " + options_.endpoint + " failed: " +
                             httplib::to_string(res.error()),
                         0, true);
  }
  const int status = res->status;
  if (status < 200 || status >= 300) {
    const bool transient = status == 408 || status == 429 || status >= 500;
    throw TransportError("HTTP " + std::to_string(status) + " from " + options_.endpoint, status,
                         transient);
  }
  return decode(res->body);
}

}  // namespace adapteval::judge
