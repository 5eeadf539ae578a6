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

#include "adapteval/corpus.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "adapteval/error.hpp"
#include "adapteval/textmatch.hpp"
#include "adapteval/util/csv.hpp"
#include "adapteval/util/format.hpp"

namespace adapteval {

using ojson = nlohmann::ordered_json;

namespace {

struct CategoryInfo {
  CsiCategory category;
  std::string_view label;
  std::string_view display;
};

constexpr CategoryInfo kCategories[] = {
    {CsiCategory::Ecology, "Ecology", "Ecology"},
    {CsiCategory::MaterialCulture, "MaterialCulture", "Material Culture"},
    {CsiCategory::SocialCulture, "SocialCulture", "Social Culture"},
    {CsiCategory::InstitutionsOrganisationsIdeas, "InstitutionsOrganisationsIdeas",
     "Institutions, Organisations and Ideas"},
    {CsiCategory::GesturesAndHabits, "GesturesAndHabits", "Gestures and Habits"},
    {CsiCategory::SlangOrFigureOfSpeech, "SlangOrFigureOfSpeech", "Slang or Figure of Speech"},
    {CsiCategory::OffensiveContent, "OffensiveContent", "Offensive Content"},
    {CsiCategory::SociallySensitiveOrTaboo, "SociallySensitiveOrTaboo",
     "Socially Sensitive or Taboo Topics"},
    {CsiCategory::Humour, "Humour", "Humour"},
};

std::string alnum_key(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
  }
  return out;
}

const std::unordered_map<std::string, CsiCategory>& category_aliases() {
  static const auto table = [] {
    std::unordered_map<std::string, CsiCategory> m;
    for (const auto& info : kCategories) {
      m[alnum_key(info.label)] = info.category;
      m[alnum_key(info.display)] = info.category;
    }
    const std::pair<const char*, CsiCategory> extra[] = {
        {"institutionsorganizationsideas", CsiCategory::InstitutionsOrganisationsIdeas},
        {"institutionsorganizationsandideas", CsiCategory::InstitutionsOrganisationsIdeas},
        {"institutionsorganisationsandideas", CsiCategory::InstitutionsOrganisationsIdeas},
        {"gestureshabits", CsiCategory::GesturesAndHabits},
        {"slangfigureofspeech", CsiCategory::SlangOrFigureOfSpeech},
        {"sociallysensitiveortaboo", CsiCategory::SociallySensitiveOrTaboo},
        {"sociallysensitiveandtaboo", CsiCategory::SociallySensitiveOrTaboo},
        {"sociallysensitiveandtabootopics", CsiCategory::SociallySensitiveOrTaboo},
        {"humor", CsiCategory::Humour},
    };
    for (const auto& [k, v] : extra) m[k] = v;
    return m;
  }();
  return table;
}

const CategoryInfo& info_of(CsiCategory c) {
  return kCategories[static_cast<std::size_t>(c)];
}

std::string dump(const ojson& j) {
  return j.dump(-1, ' ', false, ojson::error_handler_t::strict);
}

ojson parse_line(const std::string& line, std::size_t line_no) {
  try {
    auto j = ojson::parse(line);
    if (!j.is_object()) throw ParseError(line_no, "record is not a JSON object");
    return j;
  } catch (const ojson::parse_error& e) {
    throw ParseError(line_no, std::string("malformed record: ") + e.what());
  }
}

const ojson& require(const ojson& obj, const char* field, std::size_t line_no) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(line_no, std::string("missing field '") + field + "'");
  return *it;
}

std::string require_string(const ojson& obj, const char* field, std::size_t line_no) {
  const auto& v = require(obj, field, line_no);
  if (!v.is_string()) throw ParseError(line_no, std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

long long require_int(const ojson& obj, const char* field, std::size_t line_no) {
  const auto& v = require(obj, field, line_no);
  if (!v.is_number_integer()) {
    throw ParseError(line_no, std::string("field '") + field + "' must be an integer");
  }
  return v.get<long long>();
}

std::vector<Utterance> parse_utterances(const ojson& obj, std::size_t line_no) {
  const auto& arr = require(obj, "utterances", line_no);
  if (!arr.is_array()) throw ParseError(line_no, "field 'utterances' must be an array");
  std::vector<Utterance> out;
  out.reserve(arr.size());
  for (const auto& u : arr) {
    if (!u.is_object()) throw ParseError(line_no, "utterance is not an object");
    out.push_back({require_string(u, "speaker", line_no), require_string(u, "text", line_no)});
  }
  return out;
}

ojson utterances_json(const std::vector<Utterance>& us) {
  ojson arr = ojson::array();
  for (const auto& u : us) {
    ojson o;
    o["speaker"] = u.speaker;
    o["text"] = u.text;
    arr.push_back(std::move(o));
  }
  return arr;
}

template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (util::trim(line).empty()) continue;
    fn(parse_line(line, line_no), line_no);
  }
}

std::size_t counted_utterances(const Dialog& d, const LoadOptions& opts) {
  if (opts.count_transcript_notes) return d.utterances.size();
  return static_cast<std::size_t>(std::count_if(d.utterances.begin(), d.utterances.end(),
                                                [](const Utterance& u) { return !u.is_transcript_note(); }));
}

std::string join_texts(const std::vector<Utterance>& us) {
  std::string out;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (i) out += '\n';
    out += us[i].text;
  }
  return out;
}

std::string join_lines(const std::vector<Utterance>& us) {
  std::string out;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (i) out += '\n';
    out += us[i].to_line();
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      space = true;
    } else {
      if (space && !out.empty()) out += ' ';
      space = false;
      out += static_cast<char>(c);
    }
  }
  return out;
}

}  // namespace

std::string Dialog::full_text() const { return join_texts(utterances); }
std::string Dialog::render() const { return join_lines(utterances); }
std::string AdaptationRecord::full_text() const { return join_texts(utterances); }
std::string AdaptationRecord::render() const { return join_lines(utterances); }

std::string_view to_string(CsiCategory c) { return info_of(c).label; }
std::string_view display_name(CsiCategory c) { return info_of(c).display; }

std::optional<CsiCategory> parse_category(std::string_view label) {
  const auto& aliases = category_aliases();
  if (auto it = aliases.find(alnum_key(label)); it != aliases.end()) return it->second;
  return std::nullopt;
}

void validate_utterance(const Utterance& u) {
  if (util::trim(u.speaker).empty()) throw ValidationError("empty speaker");
  if (u.speaker.find_first_of("\r\n") != std::string::npos) {
    throw ValidationError("speaker contains a line break: '" + u.speaker + "'");
  }
  if (u.speaker.find(':') != std::string::npos) {
    throw ValidationError("speaker contains ':': '" + u.speaker + "'");
  }
  if (u.speaker != util::trim(u.speaker)) {
    throw ValidationError("speaker has surrounding whitespace: '" + u.speaker + "'");
  }
  if (u.text.find_first_of("\r\n") != std::string::npos) {
    throw ValidationError("text of '" + u.speaker + "' contains a line break");
  }
  if (u.text.empty() && !u.is_transcript_note()) {
    throw ValidationError("empty text for speaker '" + u.speaker + "'");
  }
}

std::vector<Dialog> parse_dialog_corpus(std::istream& in, const LoadOptions& opts) {
  std::vector<Dialog> dialogs;
  std::unordered_set<std::string> seen;
  for_each_record(in, [&](const ojson& obj, std::size_t line_no) {
    Dialog d{require_string(obj, "id", line_no), parse_utterances(obj, line_no)};
    if (d.id.empty()) throw ParseError(line_no, "empty dialog id");
    for (const auto& u : d.utterances) {
      try {
        validate_utterance(u);
      } catch (const ValidationError& e) {
        throw ParseError(line_no, "dialog '" + d.id + "': " + e.what());
      }
    }
    if (!opts.permissive) {
      const auto n = counted_utterances(d, opts);
      if (n < 1 || n > kMaxDialogUtterances) {
        throw ValidationError("line " + std::to_string(line_no) + ": dialog '" + d.id + "' has " +
                              std::to_string(n) + " utterances, outside 1.." +
                              std::to_string(kMaxDialogUtterances));
      }
    }
    if (!seen.insert(d.id).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate dialog id '" + d.id + "'");
    }
    dialogs.push_back(std::move(d));
  });
  return dialogs;
}

std::string serialize_dialog(const Dialog& d) {
  ojson j;
  j["id"] = d.id;
  j["utterances"] = utterances_json(d.utterances);
  return dump(j);
}

std::size_t count_surface_occurrences(std::string_view surface, std::string_view text) {
  const std::string needle = textmatch::normalize(surface);
  const std::string hay = textmatch::normalize(text);
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

AnnotationSet parse_csi_annotations(std::istream& in, const std::vector<Dialog>& dialogs) {
  std::unordered_map<std::string, const Dialog*> by_id;
  for (const auto& d : dialogs) by_id.emplace(d.id, &d);
  std::unordered_map<std::string, std::string> text_cache;

  AnnotationSet out;
  std::set<std::tuple<std::string, std::string, int>> keys;
  for_each_record(in, [&](const ojson& obj, std::size_t line_no) {
    const auto where = [line_no](const std::string& m) {
      return "line " + std::to_string(line_no) + ": " + m;
    };
    CsiAnnotation a;
    a.dialog_id = require_string(obj, "dialog_id", line_no);
    a.surface = require_string(obj, "surface", line_no);
    const auto label = require_string(obj, "category", line_no);
    const auto foreignness = require_int(obj, "foreignness", line_no);
    const auto occurrence = require_int(obj, "occurrence_index", line_no);

    if (util::trim(a.surface).empty()) throw ValidationError(where("empty surface"));
    auto cat = parse_category(label);
    if (!cat) throw ValidationError(where("unknown CSI category '" + label + "'"));
    a.category = *cat;
    if (foreignness < 1 || foreignness > 3) {
      throw ValidationError(where("foreignness " + std::to_string(foreignness) + " not in {1,2,3}"));
    }
    a.foreignness = static_cast<int>(foreignness);
    if (occurrence < 0) throw ValidationError(where("negative occurrence_index"));
    a.occurrence_index = static_cast<int>(occurrence);

    auto dit = by_id.find(a.dialog_id);
    if (dit == by_id.end()) throw ValidationError(where("unknown dialog id '" + a.dialog_id + "'"));
    if (!keys.emplace(a.dialog_id, a.surface, a.occurrence_index).second) {
      throw ValidationError(where("duplicate annotation (" + a.dialog_id + ", '" + a.surface +
                                  "', " + std::to_string(a.occurrence_index) + ")"));
    }

    auto [tit, inserted] = text_cache.try_emplace(a.dialog_id);
    if (inserted) tit->second = dit->second->full_text();
    const auto found = count_surface_occurrences(a.surface, tit->second);
    a.surface_found = found > static_cast<std::size_t>(a.occurrence_index);
    if (!a.surface_found) {
      out.warnings.push_back({line_no, "surface '" + a.surface + "' (occurrence " +
                                           std::to_string(a.occurrence_index) +
                                           ") not found in dialog '" + a.dialog_id + "'"});
    }
    out.annotations.push_back(std::move(a));
  });
  return out;
}

std::string serialize_annotation(const CsiAnnotation& a) {
  ojson j;
  j["dialog_id"] = a.dialog_id;
  j["surface"] = a.surface;
  j["category"] = std::string(to_string(a.category));
  j["foreignness"] = a.foreignness;
  j["occurrence_index"] = a.occurrence_index;
  return dump(j);
}

std::vector<AdaptationRecord> parse_adaptations(std::istream& in) {
  std::vector<AdaptationRecord> out;
  for_each_record(in, [&](const ojson& obj, std::size_t line_no) {
    AdaptationRecord r;
    r.dialog_id = require_string(obj, "dialog_id", line_no);
    r.model_id = require_string(obj, "model_id", line_no);
    r.culture_id = require_string(obj, "culture_id", line_no);
    r.utterances = parse_utterances(obj, line_no);
    r.raw_completion = require_string(obj, "raw_completion", line_no);
    out.push_back(std::move(r));
  });
  return out;
}

std::string serialize_adaptation(const AdaptationRecord& r) {
  ojson j;
  j["dialog_id"] = r.dialog_id;
  j["model_id"] = r.model_id;
  j["culture_id"] = r.culture_id;
  j["utterances"] = utterances_json(r.utterances);
  j["raw_completion"] = r.raw_completion;
  return dump(j);
}

StructureReport validate_adaptation_structure(const Dialog& original,
                                              const AdaptationRecord& adapted) {
  StructureReport r;
  r.dialog_id = original.id;
  r.original_count = original.utterances.size();
  r.adapted_count = adapted.utterances.size();
  r.utterance_count_match = r.original_count == r.adapted_count;
  r.empty_adaptation = adapted.utterances.empty();
  const std::size_t n = std::min(r.original_count, r.adapted_count);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = original.utterances[i].speaker;
    const auto& a = adapted.utterances[i].speaker;
    if (!util::iequals(util::trim(o), util::trim(a))) r.speaker_mismatches.push_back({i, o, a});
  }
  return r;
}

std::string serialize_structure_report(const StructureReport& r) {
  ojson j;
  j["dialog_id"] = r.dialog_id;
  j["original_count"] = r.original_count;
  j["adapted_count"] = r.adapted_count;
  j["utterance_count_match"] = r.utterance_count_match;
  j["empty_adaptation"] = r.empty_adaptation;
  ojson mism = ojson::array();
  for (const auto& m : r.speaker_mismatches) {
    ojson o;
    o["index"] = m.index;
    o["original"] = m.original_speaker;
    o["adapted"] = m.adapted_speaker;
    mism.push_back(std::move(o));
  }
  j["speaker_mismatches"] = std::move(mism);
  return dump(j);
}

CorpusStats corpus_stats(const std::vector<Dialog>& dialogs,
                         const std::vector<CsiAnnotation>& annotations, const LoadOptions& opts) {
  CorpusStats s;
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> speakers;
  for (const auto& d : dialogs) {
    ids.insert(d.id);
    ++s.dialogs;
    s.utterances += counted_utterances(d, opts);
    for (const auto& u : d.utterances) {
      if (!u.is_transcript_note()) speakers.insert(util::trim(u.speaker));
    }
  }
  s.speakers = speakers.size();
  for (const auto& a : annotations) {
    if (!ids.count(a.dialog_id)) {
      throw ValidationError("annotation references unknown dialog '" + a.dialog_id + "'");
    }
    ++s.csi_occurrences;
    ++s.per_category[static_cast<std::size_t>(a.category)];
    ++s.per_foreignness[static_cast<std::size_t>(a.foreignness - 1)];
  }
  return s;
}

std::vector<Dialog> convert_csv_layout(std::istream& in) {
  const auto rows = util::read_csv(in);
  if (rows.empty()) return {};
  const auto& header = rows.front();
  auto find_col = [&](std::initializer_list<std::string_view> names) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      for (auto n : names) {
        if (util::iequals(util::trim(header[i]), n)) return i;
      }
    }
    return header.size();
  };
  const auto id_col = find_col({"id", "dialog_id", "dialogue_id", "conversation_id"});
  const auto speaker_col = find_col({"speaker"});
  const auto text_col = find_col({"text", "utterance", "line"});
  if (id_col == header.size() || speaker_col == header.size() || text_col == header.size()) {
    throw ParseError(1, "CSV header needs id, speaker and text columns");
  }

  std::vector<Dialog> out;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto width = std::max({id_col, speaker_col, text_col}) + 1;
    if (row.size() < width) throw ParseError(r + 1, "too few columns");
    const std::string id = util::trim(row[id_col]);
    Utterance u{collapse_whitespace(row[speaker_col]), collapse_whitespace(row[text_col])};
    if (id.empty()) throw ParseError(r + 1, "empty dialog id");
    if (u.speaker.empty()) throw ParseError(r + 1, "empty speaker");
    auto [it, inserted] = index.try_emplace(id, out.size());
    if (inserted) out.push_back(Dialog{id, {}});
    out[it->second].utterances.push_back(std::move(u));
  }
  return out;
}

std::vector<Dialog> convert_text_layout(std::istream& in) {
  std::vector<Dialog> out;
  Dialog current;
  std::size_t line_no = 0;
  std::size_t unnamed = 0;
  auto flush = [&] {
    if (current.utterances.empty()) {
      current.id.clear();
      return;
    }
    if (current.id.empty()) {
      std::ostringstream id;
      id << 'd';
      id.width(4);
      id.fill('0');
      id << ++unnamed;
      current.id = id.str();
    }
    out.push_back(std::move(current));
    current = Dialog{};
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = util::trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t.front() == '#') {
      flush();
      current.id = util::trim(std::string_view(t).substr(1));
      continue;
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos || colon == 0) {
      throw ParseError(line_no, "expected 'speaker: text'");
    }
    current.utterances.push_back(
        {util::trim(std::string_view(t).substr(0, colon)),
         collapse_whitespace(std::string_view(t).substr(colon + 1))});
  }
  flush();
  return out;
}

}  // namespace adapteval
