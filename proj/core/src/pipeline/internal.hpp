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

#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adapteval/corpus.hpp"
#include "adapteval/error.hpp"
#include "adapteval/judge/backend.hpp"
#include "adapteval/judge/types.hpp"
#include "adapteval/lexicon.hpp"
#include "adapteval/pipeline/commands.hpp"
#include "adapteval/pipeline/manifest.hpp"
#include "adapteval/stats.hpp"

namespace adapteval::pipeline::detail {

using ojson = nlohmann::ordered_json;

struct Corpus {
  std::vector<Dialog> dialogs;
  std::vector<CsiAnnotation> annotations;
};

/// Loads dialogs (first `limit` only) and annotations for those dialogs.
/// Annotation warnings go to the manifest. Throws on unreadable input.
Corpus load_corpus(const RunConfig& config, RunManifest& manifest);

Lexicon load_lexicon(const RunConfig& config);

std::unique_ptr<judge::CompletionBackend> build_backend(const BackendFactory& factory,
                                                        const BackendSpec& spec,
                                                        const RunConfig& config);

/// Joins records one per line, each newline-terminated.
std::string jsonl(const std::vector<std::string>& records);
std::string dump_line(const ojson& j);

/// Atomic write plus manifest bookkeeping.
void write_output(RunManifest& manifest, const std::filesystem::path& path,
                  const std::string& content);

std::vector<AdaptationRecord> read_adaptation_file(const std::filesystem::path& path);

ojson dialog_scores_json(const judge::DialogScores& s);
/// Reads <evaluation_dir>/dialog_scores.jsonl: dialog id -> scores (null kept).
std::map<std::string, std::optional<judge::DialogScores>> read_dialog_scores(
    const std::filesystem::path& path);

/// Per-aspect columns over dialogs with non-null scores, in id order.
std::vector<Column> aspect_columns(
    const std::map<std::string, std::optional<judge::DialogScores>>& scores);

std::string format_tau(const std::optional<TauResult>& t);
std::string format_p(const std::optional<TauResult>& t);

/// Writes the manifest and echoes its warnings and errors to `log`.
CommandResult finish(RunManifest& manifest, std::ostream& log);

}  // namespace adapteval::pipeline::detail
