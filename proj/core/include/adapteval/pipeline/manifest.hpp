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
#include <filesystem>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "adapteval/judge/backend.hpp"
#include "adapteval/pipeline/config.hpp"

namespace adapteval::pipeline {

/// Library version, recorded in every manifest.
std::string_view tool_version();

/// Record of one command run: config snapshot, input and output hashes,
/// stage timings, call counters, warnings and hard errors. Written once,
/// atomically, to <out_dir>/manifests/<command>.json.
class RunManifest {
 public:
  RunManifest(Command command, const RunConfig& config);

  void add_input(const std::filesystem::path& path);
  /// Hashed when the manifest is written.
  void add_output(const std::filesystem::path& path);

  void warn(std::string message);
  void error(std::string message);
  bool has_errors() const;
  std::vector<std::string> warnings() const;
  std::vector<std::string> errors() const;

  /// Times the enclosing scope as one named stage.
  class Stage {
   public:
    Stage(RunManifest& m, std::string name);
    ~Stage();
    Stage(const Stage&) = delete;
    Stage& operator=(const Stage&) = delete;

   private:
    RunManifest& m_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
  };
  Stage stage(std::string name) { return Stage(*this, std::move(name)); }

  judge::CallCounters calls;
  std::atomic<std::size_t> requeries{0};
  std::atomic<std::size_t> nulls{0};

  nlohmann::ordered_json to_json() const;
  /// Returns the manifest path.
  std::filesystem::path write() const;

 private:
  Command command_;
  nlohmann::ordered_json config_;
  std::filesystem::path out_dir_;
  std::string started_utc_;
  mutable std::mutex mu_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::filesystem::path> outputs_;
  std::vector<std::pair<std::string, double>> stages_;
  std::vector<std::string> warnings_;
  std::vector<std::string> errors_;
};

}  // namespace adapteval::pipeline
