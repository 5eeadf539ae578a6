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

// Judge output exemplars with their expected parses: the extract-edits
// prompt's worked examples, the score formats both scoring prompts ask for,
// and published (edit, strategy) pairs.

#include <string>
#include <vector>

#include "adapteval/judge/types.hpp"

namespace adapteval::exemplars {

struct EditListCase {
  std::string raw;
  std::vector<judge::Edit> expected;
};

inline std::vector<EditListCase> edit_lists() {
  using judge::Edit;
  return {
      {"ice cream → biryani\n"
       "Rocky Road → Butter Chicken\n"
       "Cookie Dough → Paneer Tikka\n"
       "Bing! Cherry Vanilla → Paan\n"
       "Jimmies → Naan\n"
       "nuts → rice\n"
       "whipped cream → raita",
       {Edit::modify("ice cream", "biryani"), Edit::modify("Rocky Road", "Butter Chicken"),
        Edit::modify("Cookie Dough", "Paneer Tikka"), Edit::modify("Bing! Cherry Vanilla", "Paan"),
        Edit::modify("Jimmies", "Naan"), Edit::modify("nuts", "rice"),
        Edit::modify("whipped cream", "raita")}},
      {"vegan cafe → chai stall\nin the arts district → near the temple",
       {Edit::modify("vegan cafe", "chai stall"), Edit::modify("in the arts district", "near the temple")}},
      {"nude → # deletion\n → and do yoga # addition",
       {Edit::remove("nude"), Edit::insert("and do yoga")}},
      {"No edit found.", {}},
  };
}

struct StrategyCase {
  std::string edit_line;
  judge::Edit edit;
  judge::Strategy strategy;
  std::string label;
};

inline std::vector<StrategyCase> strategy_rows() {
  using judge::Edit;
  using judge::Strategy;
  return {
      {"sexually → romantically", Edit::modify("sexually", "romantically"), Strategy::Globalisation, "globalisation"},
      {"Jimmies → tamarind chutney", Edit::modify("Jimmies", "tamarind chutney"), Strategy::Transformation,
       "transformation"},
      {"Poulet → Dhoni", Edit::modify("Poulet", "Dhoni"), Strategy::Transformation, "transformation"},
      {"FICA → Income Tax", Edit::modify("FICA", "Income Tax"), Strategy::Localisation, "localisation"},
      {"predicament room → waiting lounge", Edit::modify("predicament room", "waiting lounge"),
       Strategy::Globalisation, "globalisation"},
      {"\"Son of a bitch\" is back → he is back", Edit::modify("\"Son of a bitch\" is back", "he is back"),
       Strategy::Omission, "omission"},
      {"Wendy's → Haldiram's", Edit::modify("Wendy's", "Haldiram's"), Strategy::Localisation, "localisation"},
      {"gumball ring → gumball ring. It's not even a real diamond!",
       Edit::modify("gumball ring", "gumball ring. It's not even a real diamond!"), Strategy::Addition, "addition"},
  };
}

struct EditScoreCase {
  std::string raw;
  judge::EditScores expected;
};

inline std::vector<EditScoreCase> edit_scores() {
  return {
      {"{'correctness': 1, 'localisation': 2, 'offensiveness': 0}", {1, 2, 0}},
      {"Sure! {'correctness': 0, 'localisation': 1, 'offensiveness': 1}", {0, 1, 1}},
      {"{\"correctness\": 1, \"localization\": 0, \"offensiveness\": 0}", {1, 0, 0}},
      {"{'Correctness': '1', 'Localisation': '2', 'Offensiveness': '0'}\nThe edit fits well.", {1, 2, 0}},
  };
}

/// Completion in the format the dialog scoring prompt asks for.
inline std::string dialog_score_json(int nat, int loc, int off, int ste, int con) {
  auto field = [](const char* k, int v, const char* why) {
    return std::string("\"") + k + "\": {\"score\": " + std::to_string(v) + ", \"explanation\": \"" + why + "\"}";
  };
  return "{" + field("naturalness", nat, "Flows well.") + ", " + field("localisation", loc, "Goa, chai.") + ", " +
         field("offensiveness", off, "None.") + ", " + field("stereotypical", ste, "None.") + ", " +
         field("content preservation", con, "Plot intact.") + "}";
}

}  // namespace adapteval::exemplars
