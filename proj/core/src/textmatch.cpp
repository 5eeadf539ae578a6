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

#include "adapteval/textmatch.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace adapteval::textmatch {

namespace {

// Decodes UTF-8 leniently: a byte that does not start a valid sequence maps
// to itself as one code point.
std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    char32_t cp = lead;
    if (lead >= 0xC0 && lead < 0xE0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if (lead >= 0xE0 && lead < 0xF0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if (lead >= 0xF0 && lead < 0xF8) {
      extra = 3;
      cp = lead & 0x07;
    }
    bool ok = extra > 0 && i + extra < s.size();
    for (std::size_t k = 1; ok && k <= extra; ++k) {
      const auto cont = static_cast<unsigned char>(s[i + k]);
      if ((cont & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (ok) {
      out.push_back(cp);
      i += extra + 1;
    } else {
      out.push_back(lead);
      ++i;
    }
  }
  return out;
}

// Unicode punctuation treated like ASCII punctuation, as UTF-8 sequences.
constexpr std::string_view kUnicodePunct[] = {
    "\u2018", "\u2019", "\u201C", "\u201D",  // curly quotes
    "\u2013", "\u2014", "\u2026",            // dashes, ellipsis
    "\u00A0", "\u00AB", "\u00BB", "\u2022",  // nbsp, guillemets, bullet
};

}  // namespace

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  auto put = [&](char c) {
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += c;
  };
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      if (std::isspace(c) || std::ispunct(c) || std::iscntrl(c)) {
        pending_space = true;
      } else {
        put(static_cast<char>(std::tolower(c)));
      }
      ++i;
      continue;
    }
    bool matched = false;
    for (auto p : kUnicodePunct) {
      if (text.substr(i, p.size()) == p) {
        pending_space = true;
        i += p.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      put(static_cast<char>(c));
      ++i;
    }
  }
  return out;
}

std::vector<std::string> tokens(std::string_view normalized) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && normalized[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < normalized.size() && normalized[i] != ' ') ++i;
    if (i > start) out.emplace_back(normalized.substr(start, i - start));
  }
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  const std::u32string x = decode_utf8(a);
  const std::u32string y = decode_utf8(b);
  if (x.empty()) return y.size();
  if (y.empty()) return x.size();
  std::vector<std::size_t> row(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (x[i - 1] != y[j - 1] ? 1u : 0u)});
      diag = up;
    }
  }
  return row[y.size()];
}

int similarity_ratio(std::string_view a, std::string_view b) {
  const std::size_t len = std::max(decode_utf8(a).size(), decode_utf8(b).size());
  if (len == 0) return 100;
  const std::size_t dist = edit_distance(a, b);
  // round(100 * (len - dist) / len), half up, in integers
  return static_cast<int>((200 * (len - dist) + len) / (2 * len));
}

int token_set_ratio(std::string_view a, std::string_view b) {
  const auto ta_vec = tokens(normalize(a));
  const auto tb_vec = tokens(normalize(b));
  const std::set<std::string> ta(ta_vec.begin(), ta_vec.end());
  const std::set<std::string> tb(tb_vec.begin(), tb_vec.end());
  if (ta.empty() || tb.empty()) return 0;

  std::vector<std::string> shared;
  std::vector<std::string> only_a;
  std::vector<std::string> only_b;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(shared));
  std::set_difference(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(only_a));
  std::set_difference(tb.begin(), tb.end(), ta.begin(), ta.end(), std::back_inserter(only_b));

  auto joined = [](const std::vector<std::string>& head, const std::vector<std::string>& tail) {
    std::string s;
    for (const auto* part : {&head, &tail}) {
      for (const auto& t : *part) {
        if (!s.empty()) s += ' ';
        s += t;
      }
    }
    return s;
  };
  const std::string s0 = joined(shared, {});
  const std::string s1 = joined(shared, only_a);
  const std::string s2 = joined(shared, only_b);
  return std::max({similarity_ratio(s0, s1), similarity_ratio(s0, s2), similarity_ratio(s1, s2)});
}

FuzzyHit contains_fuzzy(std::string_view needle, std::string_view haystack, int threshold) {
  if (threshold < 0 || threshold > 100) {
    throw std::invalid_argument("threshold must be within 0..100");
  }
  const std::string n = normalize(needle);
  if (n.empty()) throw std::invalid_argument("empty needle");
  const auto hay = tokens(normalize(haystack));
  const std::size_t k = tokens(n).size();

  // Same-start ties keep the needle's own width, then the narrower one.
  std::vector<std::size_t> widths{k};
  if (k > 1) widths.push_back(k - 1);
  widths.push_back(k + 1);

  FuzzyHit hit;
  bool any = false;
  for (std::size_t start = 0; start < hay.size(); ++start) {
    for (std::size_t w : widths) {
      if (start + w > hay.size()) continue;
      std::string window;
      for (std::size_t t = start; t < start + w; ++t) {
        if (t > start) window += ' ';
        window += hay[t];
      }
      const int score = token_set_ratio(n, window);
      if (!any || score > hit.best.score) {
        any = true;
        hit.best = MatchResult{score, std::move(window), {start, start + w}};
      }
    }
  }
  hit.found = any && hit.best.score >= threshold;
  return hit;
}

}  // namespace adapteval::textmatch
