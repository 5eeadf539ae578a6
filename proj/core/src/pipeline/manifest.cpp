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

#include "adapteval/pipeline/manifest.hpp"

#include <ctime>

#include "adapteval/util/hash.hpp"
#include "adapteval/util/io.hpp"

namespace adapteval::pipeline {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string_view tool_version() { return ADAPTEVAL_VERSION; }

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunManifest::RunManifest(Command command, const RunConfig& config)
    : command_(command), config_(config.to_json()), out_dir_(config.out_dir),
      started_utc_(utc_now()) {}

void RunManifest::add_input(const fs::path& path) {
  std::string hash = fs::exists(path) ? util::sha256_file(path) : "missing";
  std::lock_guard lock(mu_);
  inputs_.emplace_back(path.generic_string(), std::move(hash));
}

void RunManifest::add_output(const fs::path& path) {
  std::lock_guard lock(mu_);
  outputs_.push_back(path);
}

void RunManifest::warn(std::string message) {
  std::lock_guard lock(mu_);
  warnings_.push_back(std::move(message));
}

void RunManifest::error(std::string message) {
  std::lock_guard lock(mu_);
  errors_.push_back(std::move(message));
}

bool RunManifest::has_errors() const {
  std::lock_guard lock(mu_);
  return !errors_.empty();
}

std::vector<std::string> RunManifest::warnings() const {
  std::lock_guard lock(mu_);
  return warnings_;
}

std::vector<std::string> RunManifest::errors() const {
  std::lock_guard lock(mu_);
  return errors_;
}

RunManifest::Stage::Stage(RunManifest& m, std::string name)
    : m_(m), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

RunManifest::Stage::~Stage() {
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
  std::lock_guard lock(m_.mu_);
  m_.stages_.emplace_back(std::move(name_), elapsed.count());
}

ojson RunManifest::to_json() const {
  std::lock_guard lock(mu_);
  ojson j;
  j["command"] = to_string(command_);
  j["tool_version"] = tool_version();
  j["started_utc"] = started_utc_;
  j["config"] = config_;
  j["inputs"] = ojson::array();
  for (const auto& [path, hash] : inputs_) j["inputs"].push_back({{"path", path}, {"sha256", hash}});
  j["outputs"] = ojson::array();
  for (const auto& p : outputs_) {
    const auto rel = p.lexically_relative(out_dir_);
    j["outputs"].push_back({{"path", (rel.empty() ? p : rel).generic_string()},
                            {"sha256", fs::exists(p) ? util::sha256_file(p) : "missing"}});
  }
  j["stages"] = ojson::array();
  for (const auto& [name, seconds] : stages_) {
    j["stages"].push_back({{"name", name}, {"seconds", seconds}});
  }
  j["counters"]["cache_hits"] = calls.cache_hits.load();
  j["counters"]["backend_calls"] = calls.network_calls.load();
  j["counters"]["retries"] = calls.retries.load();
  j["counters"]["requeries"] = requeries.load();
  j["counters"]["nulls"] = nulls.load();
  j["warnings"] = warnings_;
  j["errors"] = errors_;
  j["exit_code"] = errors_.empty() ? 0 : 1;
  return j;
}

fs::path RunManifest::write() const {
  const auto path = out_dir_ / "manifests" / (std::string(to_string(command_)) + ".json");
  util::write_file_atomic(path, to_json().dump(2) + "\n");
  return path;
}

}  // namespace adapteval::pipeline
