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

#include "adapteval/judge/adaptation.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "adapteval/util/format.hpp"

namespace adapteval::judge {

namespace {

constexpr std::size_t kMaxSpeakerLength = 60;

// Commentary headers models append after the dialog.
constexpr std::array<std::string_view, 6> kCommentaryHeads = {
    "note", "notes", "explanation", "changes", "changes made", "adaptation notes",
};

std::string strip_emphasis(std::string_view s) {
  while (!s.empty() && (s.front() == '*' || s.front() == '_')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == '*' || s.back() == '_')) s.remove_suffix(1);
  return util::trim(s);
}

std::optional<Utterance> speaker_line(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string speaker = strip_emphasis(line.substr(0, colon));
  std::string text = strip_emphasis(line.substr(colon + 1));
  if (speaker.empty() || speaker.size() > kMaxSpeakerLength) return std::nullopt;
  if (util::iequals(speaker, kTranscriptNote)) {
    return Utterance{std::string(kTranscriptNote), std::move(text)};
  }
  if (text.empty()) return std::nullopt;
  const bool plausible = std::all_of(speaker.begin(), speaker.end(), [](char c) {
    return c != '"' && c != '(' && c != '[' && c != '{';
  });
  if (!plausible) return std::nullopt;
  return Utterance{std::move(speaker), std::move(text)};
}

bool is_commentary(const Utterance& u) {
  const auto lower = util::to_lower(u.speaker);
  return std::find(kCommentaryHeads.begin(), kCommentaryHeads.end(), lower) !=
         kCommentaryHeads.end();
}

}  // namespace

std::vector<Utterance> parse_adaptation_completion(std::string_view raw) {
  std::vector<Utterance> out;
  bool after_blank = false;
  for (const auto& line : util::split_lines(raw)) {
    const std::string t = util::trim(line);
    if (t.empty()) {
      after_blank = true;
      continue;
    }
    auto u = speaker_line(t);
    if (u && !out.empty() && after_blank && is_commentary(*u)) break;
    if (u) {
      out.push_back(std::move(*u));
    } else if (!out.empty()) {
      if (after_blank) break;
      out.back().text += ' ';
      out.back().text += t;
    }
    after_blank = false;
  }
  return out;
}

AdaptationRecord generate_adaptation(CompletionBackend& backend, const Dialog& dialog,
                                     const CultureProfile& culture, const CallContext& ctx) {
  static const PromptLibrary builtin;
  static const ResponseCache no_cache;
  const PromptLibrary& prompts = ctx.prompts ? *ctx.prompts : builtin;
  const std::string prompt = prompts.render(TemplateId::Adapt, {{"dialog", dialog.render()}});
  auto result = complete(backend, prompt, ctx.cache ? *ctx.cache : no_cache, ctx.retry, 0,
                         ctx.counters);
  AdaptationRecord rec;
  rec.dialog_id = dialog.id;
  rec.model_id = backend.model_id();
  rec.culture_id = culture.id;
  rec.utterances = parse_adaptation_completion(result.text);
  rec.raw_completion = std::move(result.text);
  return rec;
}

}  // namespace adapteval::judge
