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

#include "internal.hpp"

#include <fstream>
#include <set>

#include "adapteval/util/format.hpp"
#include "adapteval/util/io.hpp"

namespace adapteval::pipeline::detail {

namespace fs = std::filesystem;

Corpus load_corpus(const RunConfig& config, RunManifest& manifest) {
  Corpus c;
  LoadOptions opts;
  opts.permissive = config.permissive;
  opts.count_transcript_notes = config.count_transcript_notes;
  {
    std::ifstream in(config.dialogs, std::ios::binary);
    if (!in) throw Error("cannot open " + config.dialogs.string());
    c.dialogs = parse_dialog_corpus(in, opts);
  }
  manifest.add_input(config.dialogs);
  if (!config.annotations.empty()) {
    std::ifstream in(config.annotations, std::ios::binary);
    if (!in) throw Error("cannot open " + config.annotations.string());
    auto set = parse_csi_annotations(in, c.dialogs);
    manifest.add_input(config.annotations);
    for (const auto& w : set.warnings) {
      manifest.warn("annotations line " + std::to_string(w.line) + ": " + w.message);
    }
    c.annotations = std::move(set.annotations);
  }
  if (config.limit && *config.limit < c.dialogs.size()) {
    c.dialogs.resize(*config.limit);
    std::set<std::string, std::less<>> kept;
    for (const auto& d : c.dialogs) kept.insert(d.id);
    std::erase_if(c.annotations, [&](const CsiAnnotation& a) { return !kept.count(a.dialog_id); });
  }
  return c;
}

Lexicon load_lexicon(const RunConfig& config) {
  if (config.lexicon.empty()) return Lexicon::builtin(config.target_culture);
  std::ifstream in(config.lexicon);
  if (!in) throw Error("cannot open " + config.lexicon.string());
  return Lexicon::parse(in);
}

std::unique_ptr<judge::CompletionBackend> build_backend(const BackendFactory& factory,
                                                        const BackendSpec& spec,
                                                        const RunConfig& config) {
  return factory ? factory(spec, config) : make_backend(spec, config);
}

std::string jsonl(const std::vector<std::string>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r;
    out += '\n';
  }
  return out;
}

std::string dump_line(const ojson& j) {
  return j.dump(-1, ' ', false, ojson::error_handler_t::strict);
}

void write_output(RunManifest& manifest, const fs::path& path, const std::string& content) {
  util::write_file_atomic(path, content);
  manifest.add_output(path);
}

std::vector<AdaptationRecord> read_adaptation_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_adaptations(in);
}

ojson dialog_scores_json(const judge::DialogScores& s) {
  ojson j;
  for (auto a : judge::kAllAspects) {
    const auto i = static_cast<std::size_t>(a);
    j[std::string(to_string(a))] = {{"score", s.scores[i]}, {"explanation", s.explanations[i]}};
  }
  return j;
}

std::map<std::string, std::optional<judge::DialogScores>> read_dialog_scores(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::map<std::string, std::optional<judge::DialogScores>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (util::trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("dialog_id") ||
        !j["dialog_id"].is_string() || !j.contains("scores")) {
      throw ParseError(lineno, path.string() + ": malformed dialog score record");
    }
    std::optional<judge::DialogScores> scores;
    if (!j["scores"].is_null()) {
      judge::DialogScores s;
      for (auto a : judge::kAllAspects) {
        const auto i = static_cast<std::size_t>(a);
        const auto& v = j["scores"].value(std::string(to_string(a)), nlohmann::json());
        if (!v.is_object() || !v.contains("score") || !v["score"].is_number_integer()) {
          throw ParseError(lineno, path.string() + ": missing score for " + std::string(to_string(a)));
        }
        s.scores[i] = v["score"].get<int>();
        s.explanations[i] = v.value("explanation", "");
      }
      scores = std::move(s);
    }
    out[j["dialog_id"].get<std::string>()] = std::move(scores);
  }
  return out;
}

std::vector<Column> aspect_columns(
    const std::map<std::string, std::optional<judge::DialogScores>>& scores) {
  std::vector<Column> cols;
  for (auto a : judge::kAllAspects) cols.emplace_back(std::string(to_string(a)), std::vector<double>{});
  for (const auto& [id, s] : scores) {
    if (!s) continue;
    for (std::size_t i = 0; i < judge::kAspectCount; ++i) {
      cols[i].second.push_back(static_cast<double>(s->scores[i]));
    }
  }
  return cols;
}

std::string format_tau(const std::optional<TauResult>& t) {
  return t ? util::format_fixed(t->tau, 2) : "n/a";
}

std::string format_p(const std::optional<TauResult>& t) {
  if (!t) return "n/a";
  if (t->p_value < 1e-4) return "<0.0001";
  return util::format_fixed(t->p_value, 4);
}

CommandResult finish(RunManifest& manifest, std::ostream& log) {
  CommandResult r;
  r.warnings = manifest.warnings();
  r.errors = manifest.errors();
  r.exit_code = r.errors.empty() ? 0 : 1;
  r.manifest = manifest.write();
  for (const auto& w : r.warnings) log << "warning: " << w << '\n';
  for (const auto& e : r.errors) log << "error: " << e << '\n';
  log << "manifest: " << r.manifest.string() << '\n';
  return r;
}

}  // namespace adapteval::pipeline::detail
