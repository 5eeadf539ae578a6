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

#include <gtest/gtest.h>

#include <sstream>

#include "adapteval/error.hpp"
#include "adapteval/judge/adaptation.hpp"
#include "adapteval/judge/mock.hpp"
#include "adapteval/judge/parsers.hpp"
#include "adapteval/util/hash.hpp"
#include "sample_dialog.hpp"

namespace adapteval::judge {
namespace {

CompletionRequest request(std::string prompt) { return {"judge", std::move(prompt), {}, 0}; }

TEST(SubstitutionAdapter, ReplacesAllOccurrencesInOrder) {
  const Dialog d{"x", {{"A", "Paul likes Paul's wine."}, {"B", "Florida!"}}};
  FunctionBackend backend("subst", substitution_adapter({{"Paul", "Rohan"}, {"Rohan's wine", "Rohan's chai"},
                                                         {"Florida", "Goa"}}));
  const auto rec = generate_adaptation(backend, d, {});
  ASSERT_EQ(rec.utterances.size(), 2u);
  EXPECT_EQ(rec.utterances[0].text, "Rohan likes Rohan's chai.");
  EXPECT_EQ(rec.utterances[1].text, "Goa!");
}

TEST(SubstitutionAdapter, ReplacementContainingSourceTerminates) {
  const Dialog d{"x", {{"A", "aa"}}};
  FunctionBackend backend("subst", substitution_adapter({{"a", "aa"}}));
  EXPECT_EQ(generate_adaptation(backend, d, {}).utterances[0].text, "aaaa");
}

class HeuristicJudgeTest : public ::testing::Test {
 protected:
  HeuristicJudge judge{Lexicon::builtin("india")};
};

TEST_F(HeuristicJudgeTest, ExtractsWordLevelEdits) {
  const auto prompt = render_prompt(TemplateId::ExtractEdits,
                                    {{"original_utterance", "Monica Geller: Hey Frannie, welcome back! How was Florida?"},
                                     {"adapted_utterance", "Monica Geller: Hey Frannie, welcome back! How was Goa?"}});
  const auto edits = parse_edit_list(judge(request(prompt))).edits;
  EXPECT_EQ(edits, (std::vector<Edit>{Edit::modify("Florida?", "Goa?")}));

  EXPECT_EQ(judge.extract_edits("A: same words", "A: same words"), "No edit found.");
  EXPECT_EQ(parse_edit_list(judge.extract_edits("A: you are nude", "A: you are")).edits,
            (std::vector<Edit>{Edit::remove("nude")}));
  EXPECT_EQ(parse_edit_list(judge.extract_edits("A: relax", "A: relax and do yoga")).edits,
            (std::vector<Edit>{Edit::insert("and do yoga")}));
}

TEST_F(HeuristicJudgeTest, EditScoresAndStrategiesParse) {
  EXPECT_EQ(parse_edit_scores(judge.score_edit("Florida → Goa")), (EditScores{1, 2, 0}));
  EXPECT_EQ(parse_edit_scores(judge.score_edit("Paul → Ross")), (EditScores{1, 1, 0}));
  EXPECT_EQ(parse_edit_scores(judge.score_edit("nude → # deletion")), (EditScores{1, 0, 0}));
  EXPECT_EQ(parse_edit_scores(judge.score_edit("you → you idiot")).offensiveness, 1);

  EXPECT_EQ(parse_strategy(judge.classify_strategy("FICA → Income Tax")), Strategy::Localisation);
  EXPECT_EQ(parse_strategy(judge.classify_strategy("nude → # deletion")), Strategy::Omission);
  EXPECT_EQ(parse_strategy(judge.classify_strategy("→ and do yoga # addition")), Strategy::Addition);
  EXPECT_EQ(parse_strategy(judge.classify_strategy("predicament room → lounge")), Strategy::Globalisation);
  EXPECT_EQ(parse_strategy(judge.classify_strategy("Poulet → Pierre")), Strategy::Transformation);
}

TEST_F(HeuristicJudgeTest, DialogScoresParse) {
  const auto same = parse_dialog_scores(judge.score_dialog(exemplars::kSampleOriginal, exemplars::kSampleOriginal));
  EXPECT_EQ(same[Aspect::Naturalness], 5);
  EXPECT_EQ(same[Aspect::Localisation], 1);
  EXPECT_EQ(same[Aspect::ContentPreservation], 5);

  const auto adapted =
      parse_dialog_scores(judge.score_dialog(exemplars::kSampleOriginal, exemplars::kSampleKeepSpeakers));
  EXPECT_GT(adapted[Aspect::Localisation], 1);
  EXPECT_EQ(adapted[Aspect::Naturalness], 5);

  const auto renamed =
      parse_dialog_scores(judge.score_dialog(exemplars::kSampleOriginal, exemplars::kSampleRenamed));
  EXPECT_EQ(renamed[Aspect::Naturalness], 4);
  EXPECT_EQ(parse_dialog_scores(judge.score_dialog(exemplars::kSampleOriginal, ""))[Aspect::Naturalness], 1);
}

TEST_F(HeuristicJudgeTest, UnknownPromptIsPermanentFailure) {
  try {
    judge(request("What is the capital of France?"));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_FALSE(e.transient());
  }
}

TEST(ReplayBackend, HashBeatsSubstringThenFallback) {
  std::istringstream records(
      "{\"contains\": \"Goa\", \"text\": \"by substring\"}\n"
      "\n"
      "{\"prompt_sha256\": \"" + util::sha256_hex("exact Goa prompt") + "\", \"text\": \"by hash\"}\n");
  ReplayBackend backend("r", records, [](const CompletionRequest&) { return std::string("fallback"); });
  EXPECT_EQ(backend.size(), 2u);
  EXPECT_EQ(backend.complete(request("exact Goa prompt")), "by hash");
  EXPECT_EQ(backend.complete(request("another Goa prompt")), "by substring");
  EXPECT_EQ(backend.complete(request("Delhi")), "fallback");
}

TEST(ReplayBackend, Errors) {
  std::istringstream empty("");
  ReplayBackend backend("r", empty);
  try {
    backend.complete(request("anything"));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.status(), 404);
    EXPECT_FALSE(e.transient());
  }
  std::istringstream bad("{\"text\": \"x\"}\n");
  EXPECT_THROW(ReplayBackend("r", bad), ParseError);
  std::istringstream garbage("{\"contains\": \"a\", \"text\": \"x\"}\nnot json\n");
  try {
    ReplayBackend("r", garbage);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ReplayBackend("r", std::filesystem::path("/nonexistent/replay.jsonl")), Error);
}

}  // namespace
}  // namespace adapteval::judge
