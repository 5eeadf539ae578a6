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
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace adapteval {

/// Reserved speaker for stage directions such as "(Mary and her date meet...)".
inline constexpr std::string_view kTranscriptNote = "TRANSCRIPT NOTE";

/// One speaker-attributed line. Serialized as "speaker: text" on one line.
struct Utterance {
  std::string speaker;
  std::string text;

  bool is_transcript_note() const { return speaker == kTranscriptNote; }
  std::string to_line() const { return speaker + ": " + text; }

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct Dialog {
  std::string id;
  std::vector<Utterance> utterances;

  /// Utterance texts joined with newlines (speakers omitted).
  std::string full_text() const;
  /// One "speaker: text" line per utterance.
  std::string render() const;

  friend bool operator==(const Dialog&, const Dialog&) = default;
};

enum class CsiCategory : std::uint8_t {
  Ecology,
  MaterialCulture,
  SocialCulture,
  InstitutionsOrganisationsIdeas,
  GesturesAndHabits,
  SlangOrFigureOfSpeech,
  OffensiveContent,
  SociallySensitiveOrTaboo,
  Humour,
};

inline constexpr std::size_t kCsiCategoryCount = 9;

inline constexpr std::array<CsiCategory, kCsiCategoryCount> kAllCsiCategories = {
    CsiCategory::Ecology,
    CsiCategory::MaterialCulture,
    CsiCategory::SocialCulture,
    CsiCategory::InstitutionsOrganisationsIdeas,
    CsiCategory::GesturesAndHabits,
    CsiCategory::SlangOrFigureOfSpeech,
    CsiCategory::OffensiveContent,
    CsiCategory::SociallySensitiveOrTaboo,
    CsiCategory::Humour,
};

/// Canonical record label, e.g. "SocialCulture".
std::string_view to_string(CsiCategory c);
/// Human-readable label, e.g. "Social Culture".
std::string_view display_name(CsiCategory c);
/// Accepts the canonical label, the display name, and common spelling
/// variants (case, spacing, "and", -ise/-ize). nullopt if unknown.
std::optional<CsiCategory> parse_category(std::string_view label);

/// Foreignness level 1 items are assimilated in the target culture and are
/// excluded from every metric.
inline constexpr int kMinAnalysedForeignness = 2;

struct CsiAnnotation {
  std::string dialog_id;
  std::string surface;
  CsiCategory category = CsiCategory::Ecology;
  int foreignness = 2;
  int occurrence_index = 0;

  /// Set by validation: the surface occurs in the dialog at least
  /// occurrence_index + 1 times.
  bool surface_found = true;

  bool excluded_from_analysis() const { return foreignness < kMinAnalysedForeignness; }

  auto key() const { return std::tie(dialog_id, surface, occurrence_index); }
};

struct AdaptationRecord {
  std::string dialog_id;
  std::string model_id;
  std::string culture_id;
  std::vector<Utterance> utterances;
  std::string raw_completion;

  bool empty() const { return utterances.empty(); }
  std::string full_text() const;
  std::string render() const;

  friend bool operator==(const AdaptationRecord&, const AdaptationRecord&) = default;
};

struct SpeakerMismatch {
  std::size_t index = 0;
  std::string original_speaker;
  std::string adapted_speaker;

  friend bool operator==(const SpeakerMismatch&, const SpeakerMismatch&) = default;
};

struct StructureReport {
  std::string dialog_id;
  std::size_t original_count = 0;
  std::size_t adapted_count = 0;
  bool utterance_count_match = true;
  std::vector<SpeakerMismatch> speaker_mismatches;
  bool empty_adaptation = false;

  bool clean() const {
    return utterance_count_match && speaker_mismatches.empty() && !empty_adaptation;
  }
};

struct LoadOptions {
  /// Skip the 1..15 utterance-count filter.
  bool permissive = false;
  /// Whether TRANSCRIPT NOTE lines count toward the utterance bound and stats.
  bool count_transcript_notes = true;
};

inline constexpr std::size_t kMaxDialogUtterances = 15;

/// Annotation-level problem that does not reject the file.
struct AnnotationWarning {
  std::size_t line = 0;
  std::string message;
};

struct AnnotationSet {
  std::vector<CsiAnnotation> annotations;
  std::vector<AnnotationWarning> warnings;
};

struct CorpusStats {
  std::size_t dialogs = 0;
  std::size_t utterances = 0;
  std::size_t speakers = 0;
  std::size_t csi_occurrences = 0;
  std::array<std::size_t, kCsiCategoryCount> per_category{};
  /// Index 0..2 for foreignness levels 1..3.
  std::array<std::size_t, 3> per_foreignness{};
};

// ---- record files (JSON Lines; field names documented in SCHEMA.md) ----

std::vector<Dialog> parse_dialog_corpus(std::istream& in, const LoadOptions& opts = {});
std::string serialize_dialog(const Dialog& d);

/// Decodes annotations and checks them against `dialogs`: unknown category,
/// foreignness outside 1..3, dangling dialog id and duplicate key throw
/// ValidationError; surfaces missing from their dialog are kept, flagged
/// with surface_found=false, and reported as warnings.
AnnotationSet parse_csi_annotations(std::istream& in, const std::vector<Dialog>& dialogs);
std::string serialize_annotation(const CsiAnnotation& a);

std::vector<AdaptationRecord> parse_adaptations(std::istream& in);
std::string serialize_adaptation(const AdaptationRecord& r);

/// Checks one utterance against the Utterance invariants; throws ValidationError.
void validate_utterance(const Utterance& u);

StructureReport validate_adaptation_structure(const Dialog& original,
                                              const AdaptationRecord& adapted);
std::string serialize_structure_report(const StructureReport& r);

/// Throws ValidationError when an annotation references an unknown dialog.
CorpusStats corpus_stats(const std::vector<Dialog>& dialogs,
                         const std::vector<CsiAnnotation>& annotations,
                         const LoadOptions& opts = {});

/// Number of non-overlapping occurrences of normalized `surface` as a
/// substring of the normalized text.
std::size_t count_surface_occurrences(std::string_view surface, std::string_view text);

// ---- ingestion of externally published layouts ----

/// CSV with header containing dialog id, speaker and utterance columns
/// (names matched case-insensitively: id|dialog_id|dialogue_id|conversation_id,
/// speaker, text|utterance|line). Rows with the same id are grouped in order.
std::vector<Dialog> convert_csv_layout(std::istream& in);

/// Plain transcript blocks: "speaker: text" lines, dialogs separated by blank
/// lines, optional "# <id>" header line per block. Unnamed blocks get ids
/// "d0001", "d0002", ...
std::vector<Dialog> convert_text_layout(std::istream& in);

}  // namespace adapteval
