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

#include "adapteval/judge/mock.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "adapteval/error.hpp"
#include "adapteval/judge/adaptation.hpp"
#include "adapteval/judge/parsers.hpp"
#include "adapteval/textmatch.hpp"
#include "adapteval/util/format.hpp"
#include "adapteval/util/hash.hpp"

namespace adapteval::judge {

namespace {

constexpr std::string_view kAdaptMarker = "What is the adapted version for the following dialogue :\n";

constexpr std::array<std::string_view, 6> kOffensive = {
    "bitch", "dumb ass", "go to hell", "idiot", "damn", "bastard",
};

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string after_speaker(const std::string& line) {
  const auto colon = line.find(": ");
  return colon == std::string::npos ? line : line.substr(colon + 2);
}

// Maximal differing runs between two word sequences, via LCS.
std::vector<Edit> word_diff(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<Edit> edits;
  std::vector<std::string> src;
  std::vector<std::string> tgt;
  auto flush = [&] {
    if (src.empty() && tgt.empty()) return;
    const auto s = util::join(src, " ");
    const auto t = util::join(tgt, " ");
    if (s.empty()) {
      edits.push_back(Edit::insert(t));
    } else if (t.empty()) {
      edits.push_back(Edit::remove(s));
    } else {
      edits.push_back(Edit::modify(s, t));
    }
    src.clear();
    tgt.clear();
  };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      flush();
      ++i;
      ++j;
    } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
      tgt.push_back(b[j++]);
    } else {
      src.push_back(a[i++]);
    }
  }
  flush();
  return edits;
}

int count_offensive(std::string_view text) {
  int hits = 0;
  for (auto term : kOffensive) {
    if (textmatch::contains_fuzzy(term, text, 90).found) ++hits;
  }
  return hits;
}

std::optional<Edit> first_edit(const std::string& edit_line) {
  try {
    auto parsed = parse_edit_list(edit_line);
    if (!parsed.edits.empty()) return parsed.edits.front();
  } catch (const UnparseableResponse&) {
  }
  return std::nullopt;
}

}  // namespace

std::string echo_adaptation(const CompletionRequest& request) {
  const auto pos = request.prompt.rfind(kAdaptMarker);
  if (pos == std::string::npos) return {};
  return request.prompt.substr(pos + kAdaptMarker.size());
}

FunctionBackend::Fn substitution_adapter(std::vector<std::pair<std::string, std::string>> rules) {
  return [rules = std::move(rules)](const CompletionRequest& request) {
    std::string text = echo_adaptation(request);
    for (const auto& [from, to] : rules) {
      if (from.empty()) continue;
      for (auto pos = text.find(from); pos != std::string::npos;
           pos = text.find(from, pos + to.size())) {
        text.replace(pos, from.size(), to);
      }
    }
    return text;
  };
}

HeuristicJudge::HeuristicJudge(Lexicon lexicon, PromptLibrary prompts, int threshold)
    : lexicon_(std::move(lexicon)), prompts_(std::move(prompts)), threshold_(threshold) {}

std::string HeuristicJudge::operator()(const CompletionRequest& request) const {
  const auto& p = request.prompt;
  if (auto b = match_template(prompts_.get(TemplateId::ExtractEdits).body, p)) {
    return extract_edits(b->at("original_utterance"), b->at("adapted_utterance"));
  }
  if (auto b = match_template(prompts_.get(TemplateId::ScoreEdit).body, p)) {
    return score_edit(b->at("edit"));
  }
  if (auto b = match_template(prompts_.get(TemplateId::ClassifyStrategy).body, p)) {
    return classify_strategy(b->at("edit"));
  }
  if (auto b = match_template(prompts_.get(TemplateId::ScoreDialog).body, p)) {
    return score_dialog(b->at("original"), b->at("adapted"));
  }
  throw TransportError("heuristic judge: unrecognised prompt", 400, false);
}

std::string HeuristicJudge::extract_edits(const std::string& original,
                                          const std::string& adapted) const {
  auto edits = word_diff(words(after_speaker(original)), words(after_speaker(adapted)));
  return format_edit_list(edits);
}

std::string HeuristicJudge::score_edit(const std::string& edit_line) const {
  int correctness = 0;
  int localisation = 0;
  int offensiveness = 0;
  if (auto e = first_edit(edit_line)) {
    correctness = (e->kind == EditKind::Insert && words(e->target).size() > 12) ? 0 : 1;
    if (e->kind != EditKind::Delete) {
      localisation = lexicon_.find_in(e->target, threshold_) ? 2 : 1;
      offensiveness = count_offensive(e->target) > 0 ? 1 : 0;
    }
  }
  return "{'correctness': " + std::to_string(correctness) +
         ", 'localisation': " + std::to_string(localisation) +
         ", 'offensiveness': " + std::to_string(offensiveness) + "}";
}

std::string HeuristicJudge::classify_strategy(const std::string& edit_line) const {
  std::string_view name = "Transformation";
  if (auto e = first_edit(edit_line)) {
    const auto src = textmatch::normalize(e->source);
    const auto tgt = textmatch::normalize(e->target);
    if (e->kind == EditKind::Delete) {
      name = "Omission";
    } else if (e->kind == EditKind::Insert || (!src.empty() && tgt.find(src) != std::string::npos)) {
      name = "Addition";
    } else if (lexicon_.find_in(e->target, threshold_)) {
      name = "Localization";
    } else if (textmatch::tokens(tgt).size() < textmatch::tokens(src).size()) {
      name = "Globalization";
    }
  }
  return "The strategy used is: " + std::string(name);
}

std::string HeuristicJudge::score_dialog(const std::string& original,
                                         const std::string& adapted) const {
  const auto orig = parse_adaptation_completion(original);
  const auto adap = parse_adaptation_completion(adapted);
  std::string orig_text;
  std::string adap_text;
  for (const auto& u : orig) orig_text += u.text + "\n";
  for (const auto& u : adap) adap_text += u.text + "\n";

  int localised = 0;
  for (const auto& term : lexicon_.terms()) {
    const bool in_adapted = textmatch::contains_fuzzy(term, adap_text, threshold_).found;
    if (in_adapted && !textmatch::contains_fuzzy(term, orig_text, threshold_).found) ++localised;
  }
  const int overlap = textmatch::token_set_ratio(textmatch::normalize(orig_text),
                                                 textmatch::normalize(adap_text));
  bool same_speakers = orig.size() == adap.size();
  for (std::size_t i = 0; same_speakers && i < orig.size(); ++i) {
    same_speakers = util::iequals(orig[i].speaker, adap[i].speaker);
  }

  std::array<int, kAspectCount> s{};
  s[0] = adap.empty() ? 1 : same_speakers ? 5 : orig.size() == adap.size() ? 4 : 3;
  s[1] = 1 + std::min(4, localised);
  s[2] = 1 + std::min(4, count_offensive(adap_text));
  s[3] = 1 + std::min(4, localised / 3);
  s[4] = 1 + overlap * 4 / 100;

  nlohmann::ordered_json j;
  for (auto a : kAllAspects) {
    const auto i = static_cast<std::size_t>(a);
    j[std::string(to_string(a))] = {{"score", s[i]},
                                    {"explanation", "heuristic " + std::string(to_string(a))}};
  }
  return "```json\n" + j.dump(2) + "\n```";
}

ReplayBackend::ReplayBackend(std::string model_id, std::istream& records,
                             FunctionBackend::Fn fallback, Decoding decoding)
    : CompletionBackend(std::move(model_id), decoding), fallback_(std::move(fallback)) {
  load(records);
}

ReplayBackend::ReplayBackend(std::string model_id, const std::filesystem::path& records,
                             FunctionBackend::Fn fallback, Decoding decoding)
    : CompletionBackend(std::move(model_id), decoding), fallback_(std::move(fallback)) {
  std::ifstream in(records);
  if (!in) throw Error("cannot open replay file " + records.string());
  load(in);
}

void ReplayBackend::load(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (util::trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("text") || !j["text"].is_string()) {
      throw ParseError(lineno, "replay record needs a string \"text\" field");
    }
    auto text = j["text"].get<std::string>();
    if (j.contains("prompt_sha256") && j["prompt_sha256"].is_string()) {
      by_hash_.emplace_back(j["prompt_sha256"].get<std::string>(), std::move(text));
    } else if (j.contains("contains") && j["contains"].is_string()) {
      by_substring_.emplace_back(j["contains"].get<std::string>(), std::move(text));
    } else {
      throw ParseError(lineno, "replay record needs \"prompt_sha256\" or \"contains\"");
    }
  }
}

std::string ReplayBackend::do_complete(const CompletionRequest& request) {
  const auto hash = util::sha256_hex(request.prompt);
  for (const auto& [h, text] : by_hash_) {
    if (h == hash) return text;
  }
  for (const auto& [needle, text] : by_substring_) {
    if (request.prompt.find(needle) != std::string::npos) return text;
  }
  if (fallback_) return fallback_(request);
  throw TransportError("no replay record for prompt " + hash.substr(0, 12), 404, false);
}

}  // namespace adapteval::judge
