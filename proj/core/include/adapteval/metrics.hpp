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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adapteval/corpus.hpp"
#include "adapteval/judge/types.hpp"
#include "adapteval/lexicon.hpp"
#include "adapteval/textmatch.hpp"

namespace adapteval {

/// Exact percentage 100 * num / den. Rounded only when formatted.
struct Percentage {
  std::int64_t num = 0;
  std::int64_t den = 0;

  bool defined() const { return den > 0; }
  /// NaN when undefined.
  double value() const;
  /// Half-up to `decimals`; "n/a" when undefined.
  std::string format(int decimals = 2) const;
};

enum class CsiCountMode { Occurrence, Type };

struct CsiDecision {
  CsiAnnotation annotation;
  bool edited = false;
  textmatch::MatchResult match;
};

struct CsiEditReport {
  int threshold = textmatch::kDefaultThreshold;
  CsiCountMode mode = CsiCountMode::Occurrence;
  Percentage overall;
  std::array<Percentage, kCsiCategoryCount> per_category{};
  /// Foreignness levels 2 and 3.
  std::array<Percentage, 2> per_foreignness{};
  /// One entry per analysed annotation (per type in Type mode), input order.
  std::vector<CsiDecision> per_csi;
  std::size_t excluded_level1 = 0;
  /// Annotated dialogs without a usable adaptation, sorted; their
  /// annotations are left out of every percentage.
  std::vector<std::string> uncovered_dialogs;
  std::size_t uncovered_annotations = 0;
  /// Surfaces that normalize to nothing (punctuation only); left out.
  std::size_t unmatchable = 0;
};

/// %CSI edited for one model. An annotation counts as found when
/// contains_fuzzy(surface, adapted full text, threshold) holds. Level-1
/// annotations are dropped; annotations of dialogs with no adaptation, or an
/// adaptation with no utterances, are counted as uncovered. In Type mode
/// repeated (dialog, normalized surface) pairs count once.
CsiEditReport csi_edited_percentage(const std::vector<CsiAnnotation>& annotations,
                                    const std::vector<AdaptationRecord>& adaptations,
                                    int threshold = textmatch::kDefaultThreshold,
                                    CsiCountMode mode = CsiCountMode::Occurrence);

enum class CsiStatus { Aligned, Preserved, Unaligned };

std::string_view to_string(CsiStatus s);

struct CsiLink {
  /// Index into CsiEditReport::per_csi.
  std::size_t csi = 0;
  CsiStatus status = CsiStatus::Unaligned;
  /// Index into the dialog's edit list when aligned.
  std::optional<std::size_t> edit;
  int score = 0;
};

struct EditLink {
  std::string dialog_id;
  std::size_t edit = 0;
  /// Index into CsiEditReport::per_csi when aligned.
  std::optional<std::size_t> csi;
  bool creation_candidate = false;
  std::string creation_term;
};

struct Alignment {
  std::vector<CsiLink> csi;
  /// Dialogs in key order, edits in list order.
  std::vector<EditLink> edits;
  std::vector<std::string> log;
};

using EditsByDialog = std::map<std::string, std::vector<judge::Edit>>;

/// Matches each CSI to at most one edit and each edit to at most one CSI,
/// greedily by descending token_set_ratio(surface, edit source) among pairs
/// scoring at least `threshold`; ties prefer the earlier utterance, then the
/// earlier edit, then the earlier CSI. Unmatched CSI are Preserved when
/// found in the adaptation and Unaligned otherwise. Unmatched edits whose
/// target contains a lexicon term are Creation candidates. Tied choices
/// are logged.
Alignment align_edits_to_csi(const EditsByDialog& edits, const CsiEditReport& report,
                             const Lexicon& lexicon,
                             int threshold = textmatch::kDefaultThreshold);

struct EditAggregate {
  std::int64_t n_edits = 0;
  std::int64_t n_null = 0;
  std::int64_t correct = 0;
  std::array<std::int64_t, 3> localisation_counts{};
  std::int64_t offensive = 0;

  bool empty() const { return n_edits == 0; }
  Percentage pct_correct() const { return {correct, n_edits}; }
  Percentage pct_offensive() const { return {offensive, n_edits}; }
  Percentage localisation_pct(int level) const;
  /// (0*c0 + 1*c1 + 2*c2) / n; NaN when empty.
  double avg_localisation() const;
  std::string format_avg_localisation(int decimals = 2) const;
};

EditAggregate aggregate_edit_scores(const std::vector<std::optional<judge::EditScores>>& scores);

/// "pct_correct / avg_localisation / d0, d1, d2 / pct_offensive": two decimals
/// for the scalars, one decimal (trailing ".0" dropped) for the distribution.
std::string format_edit_row(const EditAggregate& agg);

struct DialogAggregate {
  std::int64_t n_dialogs = 0;
  std::int64_t n_null = 0;
  std::array<std::int64_t, judge::kAspectCount> sums{};

  bool empty() const { return n_dialogs == 0; }
  /// NaN when empty.
  double mean(judge::Aspect a) const;
  std::string format_mean(judge::Aspect a, int decimals = 2) const;
};

DialogAggregate aggregate_dialog_scores(
    const std::vector<std::optional<judge::DialogScores>>& records);

struct StrategyDistribution {
  std::array<std::int64_t, 7> counts{};
  /// Sum of the five classifiable strategies.
  std::int64_t classified = 0;

  bool empty() const { return classified == 0; }
  std::int64_t count(judge::Strategy s) const { return counts[static_cast<std::size_t>(s)]; }
  std::int64_t preservation_count() const { return count(judge::Strategy::Preservation); }
  std::int64_t creation_count() const { return count(judge::Strategy::Creation); }
  /// Share among classified edits; undefined for Preservation and Creation.
  Percentage percentage(judge::Strategy s) const;
};

StrategyDistribution strategy_distribution(const std::vector<judge::Strategy>& strategies);

}  // namespace adapteval
