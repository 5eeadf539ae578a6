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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adapteval/judge/backend.hpp"
#include "adapteval/judge/http_backend.hpp"
#include "adapteval/metrics.hpp"
#include "adapteval/stats.hpp"

namespace adapteval::pipeline {

enum class BackendKind { Http, Echo, Heuristic, Replay };

std::string_view to_string(BackendKind k);
std::optional<BackendKind> parse_backend_kind(std::string_view name);

struct BackendSpec {
  std::string model;
  BackendKind kind = BackendKind::Http;
  // http
  std::string endpoint;
  judge::WireFormat wire_format = judge::WireFormat::ChatCompletions;
  std::string api_key_env;
  int timeout_seconds = 120;
  // replay
  std::filesystem::path replay_file;
  std::optional<BackendKind> fallback;
  // echo
  std::vector<std::pair<std::string, std::string>> substitutions;
  judge::Decoding decoding;
};

enum class Command { Adapt, Evaluate, Correlate, Report, ValidateCorpus };

std::string_view to_string(Command c);

/// One run's settings, read from a JSON file (schema in SCHEMA.md). Relative
/// paths resolve against the config file's directory.
struct RunConfig {
  std::filesystem::path dialogs;
  std::filesystem::path annotations;
  bool permissive = false;
  bool count_transcript_notes = true;
  /// Use only the first N dialogs of the corpus.
  std::optional<std::size_t> limit;

  std::string target_culture = "india";
  std::filesystem::path prompts_dir;
  std::filesystem::path lexicon;

  std::vector<BackendSpec> adapters;
  BackendSpec judge;
  /// Adaptation files produced elsewhere, by adapter model id.
  std::map<std::string, std::filesystem::path> adaptation_files;

  int csi_match_threshold = textmatch::kDefaultThreshold;
  CsiCountMode csi_count_mode = CsiCountMode::Occurrence;
  std::filesystem::path cache_dir;
  std::filesystem::path out_dir = "out";
  std::size_t max_inflight = 4;
  judge::RetryPolicy retry;

  double significance = 0.05;
  PValueMethod p_value = PValueMethod::Normal;
  std::filesystem::path human_ratings;
  /// Adapter whose judge scores are compared with the human ratings;
  /// defaults to the first adapter.
  std::string human_eval_model;

  /// Throws ValidationError on unknown keys, wrong types or bad values.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& file);

  nlohmann::ordered_json to_json() const;

  /// Checks the fields `cmd` needs: referenced paths exist, model ids are
  /// unique, ranges hold. Throws ValidationError listing every problem.
  void validate(Command cmd) const;

  /// Adapter models followed by models that only have adaptation files.
  std::vector<std::string> model_ids() const;
  std::filesystem::path adaptations_path(const std::string& model) const;
  std::filesystem::path evaluation_dir(const std::string& model) const;
};

/// Command-line overrides; unset fields leave the config untouched.
struct Overrides {
  std::optional<int> csi_match_threshold;
  std::optional<std::string> judge_model;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::size_t> max_inflight;
  std::optional<double> significance;
  std::optional<std::filesystem::path> human_ratings;
};

void apply_overrides(RunConfig& config, const Overrides& o);

std::unique_ptr<judge::CompletionBackend> make_backend(const BackendSpec& spec,
                                                       const RunConfig& config);

}  // namespace adapteval::pipeline
