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
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "adapteval/judge/backend.hpp"
#include "adapteval/judge/prompts.hpp"
#include "adapteval/lexicon.hpp"

namespace adapteval::judge {

/// Returns the dialog embedded in an adapt prompt unchanged.
std::string echo_adaptation(const CompletionRequest& request);

/// Echoes the dialog with each `from` replaced by `to` (literal, all
/// occurrences, in list order).
FunctionBackend::Fn substitution_adapter(std::vector<std::pair<std::string, std::string>> rules);

/// Deterministic offline judge that answers all four evaluation prompts in
/// the formats the parsers expect: word-level diff for edit extraction,
/// lexicon rules for edit scores and strategies, and overlap-based dialog
/// scores. Prompts it does not recognise fail with a non-transient
/// TransportError.
class HeuristicJudge {
 public:
  explicit HeuristicJudge(Lexicon lexicon, PromptLibrary prompts = {}, int threshold = 80);

  std::string operator()(const CompletionRequest& request) const;

  std::string extract_edits(const std::string& original, const std::string& adapted) const;
  std::string score_edit(const std::string& edit_line) const;
  std::string classify_strategy(const std::string& edit_line) const;
  std::string score_dialog(const std::string& original, const std::string& adapted) const;

 private:
  Lexicon lexicon_;
  PromptLibrary prompts_;
  int threshold_;
};

/// Replays recorded completions from JSON Lines. Each record has "text" and
/// one of "prompt_sha256" (exact prompt hash) or "contains" (substring of
/// the prompt). Hash matches win; otherwise the first "contains" record in
/// file order. Unmatched prompts go to `fallback` or fail with a
/// non-transient TransportError (status 404).
class ReplayBackend : public CompletionBackend {
 public:
  ReplayBackend(std::string model_id, std::istream& records,
                FunctionBackend::Fn fallback = nullptr, Decoding decoding = {});
  ReplayBackend(std::string model_id, const std::filesystem::path& records,
                FunctionBackend::Fn fallback = nullptr, Decoding decoding = {});

  std::size_t size() const { return by_hash_.size() + by_substring_.size(); }

 private:
  std::string do_complete(const CompletionRequest& request) override;
  void load(std::istream& in);

  std::vector<std::pair<std::string, std::string>> by_hash_;
  std::vector<std::pair<std::string, std::string>> by_substring_;
  FunctionBackend::Fn fallback_;
};

}  // namespace adapteval::judge
