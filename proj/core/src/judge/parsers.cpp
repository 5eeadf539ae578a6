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

#include "adapteval/judge/parsers.hpp"

#include <array>
#include <cctype>
#include <nlohmann/json.hpp>
#include <optional>
#include <regex>

#include "adapteval/error.hpp"
#include "adapteval/util/format.hpp"

namespace adapteval::judge {

namespace {

constexpr std::string_view kArrow = "→";
constexpr std::string_view kAsciiArrow = "->";

bool ends_with_ci(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && util::iequals(s.substr(s.size() - suffix.size()), suffix);
}

// Removes a trailing "# deletion"/"#addition" style marker. Returns the marker
// word if one was present.
std::optional<std::string> take_marker(std::string& side) {
  for (std::string_view word : {"deletion", "addition"}) {
    if (!ends_with_ci(side, word)) continue;
    std::string_view rest = std::string_view(side).substr(0, side.size() - word.size());
    while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
    if (rest.empty() || rest.back() != '#') continue;
    rest.remove_suffix(1);
    side = util::trim(rest);
    return std::string(word);
  }
  return std::nullopt;
}

std::string strip_quotes(std::string s) {
  if (s.size() >= 2) {
    const char f = s.front();
    const char b = s.back();
    if ((f == '"' && b == '"') || (f == '\'' && b == '\'') || (f == '`' && b == '`')) {
      return util::trim(std::string_view(s).substr(1, s.size() - 2));
    }
  }
  return s;
}

std::string strip_bullet(const std::string& line) {
  static const std::regex bullet(R"(^(?:[-*]|•|\d{1,3}[.)])\s+)");
  std::smatch m;
  if (std::regex_search(line, m, bullet)) return line.substr(static_cast<std::size_t>(m.length(0)));
  return line;
}

bool is_no_edit_marker(std::string_view line) {
  std::string l = util::to_lower(util::trim(line));
  while (!l.empty() && (l.back() == '.' || l.back() == '!')) l.pop_back();
  return l == "no edit found" || l == "no edits found";
}

// First '{' and its matching '}' by depth, ignoring quotes.
std::optional<std::string_view> first_brace_block(std::string_view raw) {
  const auto open = raw.find('{');
  if (open == std::string_view::npos) return std::nullopt;
  int depth = 0;
  for (std::size_t i = open; i < raw.size(); ++i) {
    if (raw[i] == '{') ++depth;
    if (raw[i] == '}' && --depth == 0) return raw.substr(open, i - open + 1);
  }
  return std::nullopt;
}

// Balanced JSON object starting at `open`, honoring double-quoted strings.
std::optional<std::string_view> json_object_at(std::string_view raw, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < raw.size(); ++i) {
    const char c = raw[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return raw.substr(open, i - open + 1);
    }
  }
  return std::nullopt;
}

int score_value(const nlohmann::json& v, std::string_view aspect) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const std::string s = util::trim(v.get<std::string>());
    static const std::regex integer(R"(^-?\d{1,3}$)");
    if (std::regex_match(s, integer)) return std::stoi(s);
  }
  throw InvalidResponse("score for '" + std::string(aspect) + "' is not an integer: " + v.dump());
}

}  // namespace

EditListParse parse_edit_list(std::string_view raw) {
  EditListParse out;
  for (const auto& line : util::split_lines(raw)) {
    const std::string t = util::trim(line);
    if (t.empty()) continue;
    if (is_no_edit_marker(t)) {
      out.saw_no_edit_marker = true;
      continue;
    }
    const std::string body = strip_bullet(t);
    std::size_t pos = body.find(kArrow);
    std::size_t arrow_len = kArrow.size();
    if (const auto ascii = body.find(kAsciiArrow); ascii != std::string::npos && ascii < pos) {
      pos = ascii;
      arrow_len = kAsciiArrow.size();
    }
    if (pos == std::string::npos) {
      out.residue.push_back(line);
      continue;
    }
    std::string left = util::trim(std::string_view(body).substr(0, pos));
    std::string right = util::trim(std::string_view(body).substr(pos + arrow_len));
    const auto marker = take_marker(right);
    left = strip_quotes(left);
    right = strip_quotes(right);

    if (marker == "deletion") {
      if (left.empty() || !right.empty()) {
        out.residue.push_back(line);
        continue;
      }
      out.edits.push_back(Edit::remove(std::move(left)));
    } else if (left.empty() && right.empty()) {
      out.residue.push_back(line);
    } else if (left.empty()) {
      out.edits.push_back(Edit::insert(std::move(right)));
    } else if (right.empty()) {
      out.edits.push_back(Edit::remove(std::move(left)));
    } else {
      out.edits.push_back(Edit::modify(std::move(left), std::move(right)));
    }
  }
  if (out.edits.empty() && !out.saw_no_edit_marker) {
    throw UnparseableResponse("no edit lines and no 'No edit found.' marker");
  }
  return out;
}

std::string format_edit(const Edit& e) {
  const std::string arrow(kArrow);
  switch (e.kind) {
    case EditKind::Modify: return e.source + " " + arrow + " " + e.target;
    case EditKind::Delete: return e.source + " " + arrow + " # deletion";
    case EditKind::Insert: return arrow + " " + e.target + " # addition";
  }
  return {};
}

std::string format_edit_list(const std::vector<Edit>& edits) {
  if (edits.empty()) return "No edit found.";
  std::string out;
  for (std::size_t i = 0; i < edits.size(); ++i) {
    if (i) out += '\n';
    out += format_edit(edits[i]);
  }
  return out;
}

EditScores parse_edit_scores(std::string_view raw) {
  const auto block = first_brace_block(raw);
  if (!block) throw UnparseableResponse("no brace-delimited score block");

  static const std::regex pair(R"re((['"]?)([A-Za-z][A-Za-z _]*)\1\s*:\s*([^,}\s]+))re");
  std::array<std::optional<int>, 3> values;  // correctness, localisation, offensiveness
  const std::string text(*block);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), pair); it != std::sregex_iterator();
       ++it) {
    const std::string key = util::to_lower(util::trim((*it)[2].str()));
    std::size_t slot = 3;
    if (key == "correctness") slot = 0;
    if (key == "localisation" || key == "localization") slot = 1;
    if (key == "offensiveness") slot = 2;
    if (slot == 3 || values[slot]) continue;
    std::string value = (*it)[3].str();
    if (value.size() >= 2 && (value.front() == '\'' || value.front() == '"') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    static const std::regex integer(R"(^-?\d{1,3}$)");
    if (!std::regex_match(value, integer)) {
      throw InvalidResponse("value for '" + key + "' is not an integer: " + value);
    }
    values[slot] = std::stoi(value);
  }

  constexpr std::array<std::string_view, 3> names = {"correctness", "localisation", "offensiveness"};
  constexpr std::array<int, 3> max_value = {1, 2, 1};
  EditScores s;
  std::array<int*, 3> fields = {&s.correctness, &s.localisation, &s.offensiveness};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!values[i]) throw InvalidResponse("missing key '" + std::string(names[i]) + "'");
    if (*values[i] < 0 || *values[i] > max_value[i]) {
      throw InvalidResponse(std::string(names[i]) + " = " + std::to_string(*values[i]) +
                            " outside 0.." + std::to_string(max_value[i]));
    }
    *fields[i] = *values[i];
  }
  return s;
}

Strategy parse_strategy(std::string_view raw) {
  static constexpr std::pair<std::string_view, Strategy> kNames[] = {
      {"addition", Strategy::Addition},
      {"omission", Strategy::Omission},
      {"globalization", Strategy::Globalisation},
      {"globalisation", Strategy::Globalisation},
      {"localization", Strategy::Localisation},
      {"localisation", Strategy::Localisation},
      {"transformation", Strategy::Transformation},
  };
  const std::string lower = util::to_lower(raw);
  std::optional<std::pair<std::size_t, Strategy>> last;
  for (const auto& [name, strategy] : kNames) {
    for (auto pos = lower.find(name); pos != std::string::npos; pos = lower.find(name, pos + 1)) {
      if (pos > 0 && std::isalpha(static_cast<unsigned char>(lower[pos - 1]))) continue;
      if (!last || pos > last->first) last = {pos, strategy};
    }
  }
  if (!last) throw UnparseableResponse("no strategy name in completion");
  return last->second;
}

DialogScores parse_dialog_scores(std::string_view raw) {
  std::optional<nlohmann::json> chosen;
  std::optional<nlohmann::json> first_object;
  for (auto open = raw.find('{'); open != std::string_view::npos; open = raw.find('{', open + 1)) {
    const auto block = json_object_at(raw, open);
    if (!block) continue;
    nlohmann::json j = nlohmann::json::parse(*block, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (!first_object) first_object = j;
    bool has_aspect = false;
    for (const auto& [k, v] : j.items()) has_aspect |= parse_aspect(k).has_value();
    if (has_aspect) {
      chosen = std::move(j);
      break;
    }
  }
  if (!chosen) chosen = std::move(first_object);
  if (!chosen) throw UnparseableResponse("no well-formed JSON object");

  DialogScores out;
  std::array<bool, kAspectCount> seen{};
  for (const auto& [key, value] : chosen->items()) {
    const auto aspect = parse_aspect(key);
    if (!aspect) continue;
    const auto idx = static_cast<std::size_t>(*aspect);
    if (seen[idx]) continue;
    seen[idx] = true;
    int score = 0;
    if (value.is_object()) {
      const nlohmann::json* score_v = nullptr;
      for (const auto& [k, v] : value.items()) {
        const auto lk = util::to_lower(k);
        if (lk == "score" && !score_v) score_v = &v;
        if (lk == "explanation" && v.is_string()) out.explanations[idx] = v.get<std::string>();
      }
      if (!score_v) throw InvalidResponse("aspect '" + key + "' has no score");
      score = score_value(*score_v, key);
    } else {
      score = score_value(value, key);
    }
    if (score < 1 || score > 5) {
      throw InvalidResponse("aspect '" + key + "' score " + std::to_string(score) + " outside 1..5");
    }
    out.scores[idx] = score;
  }
  for (auto a : kAllAspects) {
    if (!seen[static_cast<std::size_t>(a)]) {
      throw InvalidResponse("missing aspect '" + std::string(to_string(a)) + "'");
    }
  }
  return out;
}

}  // namespace adapteval::judge
