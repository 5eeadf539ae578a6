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

#include <string>
#include <string_view>
#include <vector>

#include "adapteval/judge/types.hpp"

namespace adapteval::judge {

struct EditListParse {
  std::vector<Edit> edits;
  /// Non-blank lines that matched no edit grammar, verbatim.
  std::vector<std::string> residue;
  bool saw_no_edit_marker = false;
};

/// Parses an extract_edits completion. Grammar, one per line:
///   "X → Y"               modify
///   "X → # deletion"      delete
///   "→ Y # addition"      insert
///   "No edit found."      no edits
/// "->" is accepted for "→"; list bullets and matching quotes are stripped.
/// Throws UnparseableResponse when there is neither an edit line nor the
/// no-edit marker. utterance_index is left 0 for the caller to set.
EditListParse parse_edit_list(std::string_view raw);

/// Inverse of parse_edit_list for well-formed edits.
std::string format_edit(const Edit& e);
std::string format_edit_list(const std::vector<Edit>& edits);

/// Reads the first brace-delimited block of a score_edit completion, e.g.
/// "{'correctness': 1, 'localisation': 2, 'offensiveness': 0}". Keys are
/// case-insensitive and "localization" is accepted. Throws
/// UnparseableResponse without a block, InvalidResponse for a missing key,
/// a non-integer or an out-of-range value.
EditScores parse_edit_scores(std::string_view raw);

/// Last strategy name mentioned in a classify_strategy completion
/// (case-insensitive, either -ise or -ize spelling). Only the five
/// classifiable strategies are recognised. Throws UnparseableResponse.
Strategy parse_strategy(std::string_view raw);

/// First well-formed JSON object carrying aspect keys, with each aspect as
/// {"score": n, "explanation": "..."} or a bare integer. Throws
/// UnparseableResponse without such an object and InvalidResponse for a
/// missing aspect or a score that is not an integer in 1..5.
DialogScores parse_dialog_scores(std::string_view raw);

}  // namespace adapteval::judge
