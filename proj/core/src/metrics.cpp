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

#include "adapteval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "adapteval/error.hpp"
#include "adapteval/util/format.hpp"

namespace adapteval {

using judge::Aspect;
using judge::Edit;
using judge::EditKind;
using judge::Strategy;

double Percentage::value() const {
  if (!defined()) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::string Percentage::format(int decimals) const {
  if (!defined()) return "n/a";
  return util::format_ratio(100 * num, den, decimals);
}

CsiEditReport csi_edited_percentage(const std::vector<CsiAnnotation>& annotations,
                                    const std::vector<AdaptationRecord>& adaptations,
                                    int threshold, CsiCountMode mode) {
  std::map<std::string, std::string, std::less<>> adapted_text;
  for (const auto& rec : adaptations) {
    if (!adapted_text.emplace(rec.dialog_id, rec.full_text()).second) {
      throw ValidationError("duplicate adaptation for dialog '" + rec.dialog_id + "' (model " +
                            rec.model_id + ")");
    }
    if (rec.empty()) adapted_text.erase(rec.dialog_id);
  }

  CsiEditReport report;
  report.threshold = threshold;
  report.mode = mode;
  std::set<std::string> uncovered;
  std::set<std::pair<std::string, std::string>> seen_types;
  for (const auto& a : annotations) {
    if (a.excluded_from_analysis()) {
      ++report.excluded_level1;
      continue;
    }
    const auto it = adapted_text.find(a.dialog_id);
    if (it == adapted_text.end()) {
      uncovered.insert(a.dialog_id);
      ++report.uncovered_annotations;
      continue;
    }
    const auto norm = textmatch::normalize(a.surface);
    if (norm.empty()) {
      ++report.unmatchable;
      continue;
    }
    if (mode == CsiCountMode::Type && !seen_types.emplace(a.dialog_id, norm).second) continue;

    auto hit = textmatch::contains_fuzzy(a.surface, it->second, threshold);
    const bool edited = !hit.found;
    const std::int64_t e = edited ? 1 : 0;
    report.overall.num += e;
    ++report.overall.den;
    auto& cat = report.per_category[static_cast<std::size_t>(a.category)];
    cat.num += e;
    ++cat.den;
    auto& lvl = report.per_foreignness[static_cast<std::size_t>(a.foreignness - 2)];
    lvl.num += e;
    ++lvl.den;
    report.per_csi.push_back({a, edited, std::move(hit.best)});
  }
  report.uncovered_dialogs.assign(uncovered.begin(), uncovered.end());
  return report;
}

std::string_view to_string(CsiStatus s) {
  switch (s) {
    case CsiStatus::Aligned: return "aligned";
    case CsiStatus::Preserved: return "preserved";
    case CsiStatus::Unaligned: return "unaligned";
  }
  return "unaligned";
}

Alignment align_edits_to_csi(const EditsByDialog& edits, const CsiEditReport& report,
                             const Lexicon& lexicon, int threshold) {
  Alignment out;
  std::map<std::string, std::vector<std::size_t>, std::less<>> csi_by_dialog;
  for (std::size_t i = 0; i < report.per_csi.size(); ++i) {
    csi_by_dialog[report.per_csi[i].annotation.dialog_id].push_back(i);
    out.csi.push_back({i, CsiStatus::Unaligned, std::nullopt, 0});
  }

  for (const auto& [dialog_id, list] : edits) {
    const std::size_t first_link = out.edits.size();
    for (std::size_t j = 0; j < list.size(); ++j) {
      EditLink link;
      link.dialog_id = dialog_id;
      link.edit = j;
      out.edits.push_back(std::move(link));
    }

    struct Candidate {
      int score;
      std::size_t utterance;
      std::size_t edit;
      std::size_t csi;
    };
    std::vector<Candidate> candidates;
    if (auto it = csi_by_dialog.find(dialog_id); it != csi_by_dialog.end()) {
      for (std::size_t j = 0; j < list.size(); ++j) {
        const auto source = textmatch::normalize(list[j].source);
        if (source.empty()) continue;
        for (auto c : it->second) {
          const auto surface = textmatch::normalize(report.per_csi[c].annotation.surface);
          const int score = textmatch::token_set_ratio(surface, source);
          if (score >= threshold) candidates.push_back({score, list[j].utterance_index, j, c});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(b.score, a.utterance, a.edit, a.csi) <
             std::tie(a.score, b.utterance, b.edit, b.csi);
    });

    std::set<std::size_t> used_edits;
    std::set<std::size_t> used_csi;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const auto& cand = candidates[k];
      if (used_edits.count(cand.edit) || used_csi.count(cand.csi)) continue;
      for (std::size_t r = k + 1; r < candidates.size() && candidates[r].score == cand.score; ++r) {
        const auto& rival = candidates[r];
        if (used_edits.count(rival.edit) || used_csi.count(rival.csi)) continue;
        if (rival.csi == cand.csi || rival.edit == cand.edit) {
          out.log.push_back("dialog " + dialog_id + ": CSI '" +
                            report.per_csi[cand.csi].annotation.surface + "' and edit '" +
                            list[cand.edit].source + "' chosen over tie with CSI '" +
                            report.per_csi[rival.csi].annotation.surface + "' / edit '" +
                            list[rival.edit].source + "' at score " +
                            std::to_string(cand.score));
        }
      }
      used_edits.insert(cand.edit);
      used_csi.insert(cand.csi);
      out.csi[cand.csi].status = CsiStatus::Aligned;
      out.csi[cand.csi].edit = cand.edit;
      out.csi[cand.csi].score = cand.score;
      out.edits[first_link + cand.edit].csi = cand.csi;
    }

    for (std::size_t j = 0; j < list.size(); ++j) {
      auto& link = out.edits[first_link + j];
      if (link.csi || list[j].kind == EditKind::Delete) continue;
      if (auto term = lexicon.find_in(list[j].target, threshold)) {
        link.creation_candidate = true;
        link.creation_term = *term;
      }
    }
  }

  for (auto& link : out.csi) {
    if (link.status != CsiStatus::Aligned) {
      link.status = report.per_csi[link.csi].edited ? CsiStatus::Unaligned : CsiStatus::Preserved;
    }
  }
  return out;
}

Percentage EditAggregate::localisation_pct(int level) const {
  return {localisation_counts.at(static_cast<std::size_t>(level)), n_edits};
}

double EditAggregate::avg_localisation() const {
  if (empty()) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(localisation_counts[1] + 2 * localisation_counts[2]) /
         static_cast<double>(n_edits);
}

std::string EditAggregate::format_avg_localisation(int decimals) const {
  if (empty()) return "n/a";
  return util::format_ratio(localisation_counts[1] + 2 * localisation_counts[2], n_edits, decimals);
}

EditAggregate aggregate_edit_scores(const std::vector<std::optional<judge::EditScores>>& scores) {
  EditAggregate agg;
  for (const auto& s : scores) {
    if (!s) {
      ++agg.n_null;
      continue;
    }
    if (s->correctness < 0 || s->correctness > 1 || s->localisation < 0 || s->localisation > 2 ||
        s->offensiveness < 0 || s->offensiveness > 1) {
      throw ValidationError("edit score outside its range");
    }
    ++agg.n_edits;
    agg.correct += s->correctness;
    ++agg.localisation_counts[static_cast<std::size_t>(s->localisation)];
    agg.offensive += s->offensiveness;
  }
  return agg;
}

std::string format_edit_row(const EditAggregate& agg) {
  if (agg.empty()) return "n/a / n/a / n/a / n/a";
  std::string dist;
  for (int level = 0; level < 3; ++level) {
    if (level) dist += ", ";
    dist += util::format_ratio_compact(100 * agg.localisation_counts[level], agg.n_edits, 1);
  }
  return agg.pct_correct().format(2) + " / " + agg.format_avg_localisation(2) + " / " + dist +
         " / " + agg.pct_offensive().format(2);
}

double DialogAggregate::mean(Aspect a) const {
  if (empty()) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(sums[static_cast<std::size_t>(a)]) / static_cast<double>(n_dialogs);
}

std::string DialogAggregate::format_mean(Aspect a, int decimals) const {
  if (empty()) return "n/a";
  return util::format_ratio(sums[static_cast<std::size_t>(a)], n_dialogs, decimals);
}

DialogAggregate aggregate_dialog_scores(
    const std::vector<std::optional<judge::DialogScores>>& records) {
  DialogAggregate agg;
  for (const auto& r : records) {
    if (!r) {
      ++agg.n_null;
      continue;
    }
    for (std::size_t i = 0; i < judge::kAspectCount; ++i) {
      if (r->scores[i] < 1 || r->scores[i] > 5) {
        throw ValidationError("dialog score outside 1..5");
      }
      agg.sums[i] += r->scores[i];
    }
    ++agg.n_dialogs;
  }
  return agg;
}

Percentage StrategyDistribution::percentage(Strategy s) const {
  if (s == Strategy::Preservation || s == Strategy::Creation) return {};
  return {count(s), classified};
}

StrategyDistribution strategy_distribution(const std::vector<Strategy>& strategies) {
  StrategyDistribution d;
  for (auto s : strategies) ++d.counts[static_cast<std::size_t>(s)];
  for (auto s : judge::kClassifiableStrategies) d.classified += d.count(s);
  return d;
}

}  // namespace adapteval
