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

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adapteval::textmatch {

inline constexpr int kDefaultThreshold = 80;

/// Lowercases ASCII, maps ASCII and common Unicode punctuation to spaces,
/// collapses whitespace runs and trims. Non-ASCII letters pass through.
std::string normalize(std::string_view text);

std::vector<std::string> tokens(std::string_view normalized);

/// Unit-cost Levenshtein distance over Unicode code points.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// 100 * (1 - dist / max_len), rounded half up; 100 when both are empty.
int similarity_ratio(std::string_view a, std::string_view b);

/// Token-set similarity: compares the sorted shared tokens against each
/// side's sorted shared-plus-remaining tokens and takes the best pairwise
/// similarity_ratio. Both inputs are normalized first; 0 when either side
/// has no tokens.
int token_set_ratio(std::string_view a, std::string_view b);

struct MatchResult {
  int score = 0;
  std::string matched_window;
  /// Half-open [first, second) token range in the normalized haystack.
  std::pair<std::size_t, std::size_t> window_span{0, 0};
};

struct FuzzyHit {
  bool found = false;
  MatchResult best;
};

/// Best token_set_ratio between the needle and any haystack window of
/// k-1, k or k+1 tokens (k = needle tokens, widths at least 1). Both inputs
/// are normalized here. Ties go to the earliest window start, then to width
/// k, k-1, k+1 in that order. Throws std::invalid_argument on an empty needle or a
/// threshold outside 0..100.
FuzzyHit contains_fuzzy(std::string_view needle, std::string_view haystack,
                        int threshold = kDefaultThreshold);

}  // namespace adapteval::textmatch
