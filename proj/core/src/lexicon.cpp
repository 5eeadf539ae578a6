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

#include "adapteval/lexicon.hpp"

#include <algorithm>
#include <array>

#include "adapteval/textmatch.hpp"
#include "adapteval/util/format.hpp"

namespace adapteval {

namespace {

constexpr std::array<std::string_view, 70> kIndia = {
    "biryani", "butter chicken", "paneer tikka", "paan", "naan", "raita", "sevai", "kulfi",
    "rava kesari", "cardamom", "coriander", "tamarind chutney", "samosa", "dosa", "idli",
    "lassi", "chai", "masala", "jalebi", "ladoo", "halwa", "namkeen", "kebab", "curd",
    "dal", "roti", "chaat", "pani puri", "vada pav", "haldiram s", "diwali", "holi", "eid",
    "navratri", "raksha bandhan", "kurta", "saree", "lehenga", "dupatta", "sherwani",
    "cricket", "ipl", "dhoni", "sachin", "bollywood", "shreya ghoshal", "shah rukh khan",
    "red fort", "taj mahal", "goa", "kerala", "mumbai", "delhi", "bangalore", "kolkata",
    "chennai", "times of india", "income tax", "rupees", "rickshaw", "dhaba",
    "yoga", "chakra", "chachi", "bhaiya", "didi", "aunty", "mehendi", "sangeet",
    "anjuna flea market",
};

}  // namespace

Lexicon::Lexicon(const std::vector<std::string>& terms) {
  for (const auto& t : terms) {
    std::string n = textmatch::normalize(t);
    if (n.empty() || std::find(terms_.begin(), terms_.end(), n) != terms_.end()) continue;
    terms_.push_back(std::move(n));
  }
}

Lexicon Lexicon::parse(std::istream& in) {
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = util::trim(line);
    if (t.empty() || t.front() == '#') continue;
    terms.push_back(t);
  }
  return Lexicon(terms);
}

Lexicon Lexicon::builtin(std::string_view culture_id) {
  if (!util::iequals(culture_id, "india")) return {};
  return Lexicon(std::vector<std::string>(kIndia.begin(), kIndia.end()));
}

std::optional<std::string> Lexicon::find_in(std::string_view text, int threshold) const {
  if (textmatch::normalize(text).empty()) return std::nullopt;
  for (const auto& term : terms_) {
    if (textmatch::contains_fuzzy(term, text, threshold).found) return term;
  }
  return std::nullopt;
}

}  // namespace adapteval
