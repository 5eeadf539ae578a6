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
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "adapteval/judge/backend.hpp"
#include "adapteval/pipeline/config.hpp"

namespace adapteval::pipeline {

struct CommandResult {
  /// 0 when no hard error was recorded, 1 otherwise.
  int exit_code = 0;
  std::filesystem::path manifest;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
};

using BackendFactory =
    std::function<std::unique_ptr<judge::CompletionBackend>(const BackendSpec&, const RunConfig&)>;

/// Every command validates the config first (ValidationError on failure),
/// then records problems met while running in the manifest instead of
/// throwing. Progress lines go to `log`. A null factory means make_backend.

CommandResult cmd_validate_corpus(const RunConfig& config, std::ostream& log);

/// Writes <out>/adaptations/<model>.jsonl and <model>.structure.jsonl per adapter.
CommandResult cmd_adapt(const RunConfig& config, std::ostream& log,
                        const BackendFactory& factory = nullptr);

/// Writes <out>/evaluation/<model>/{structure,csi,edits,edit_scores,alignment,
/// strategies,dialog_scores}.jsonl and metrics.json, plus
/// <out>/evaluation/metrics.csv.
CommandResult cmd_evaluate(const RunConfig& config, std::ostream& log,
                           const BackendFactory& factory = nullptr);

/// Writes <out>/correlation/{human_vs_judge.csv,correlation.md} and
/// aspects_<model>.csv per evaluated model.
CommandResult cmd_correlate(const RunConfig& config, std::ostream& log);

/// Writes <out>/report/report.md and the per-section CSV files.
CommandResult cmd_report(const RunConfig& config, std::ostream& log);

}  // namespace adapteval::pipeline
