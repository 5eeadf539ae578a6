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

#include "adapteval/corpus.hpp"
#include "adapteval/error.hpp"
#include "test_support.hpp"

namespace adapteval {
namespace {

std::vector<Dialog> parse(const std::string& text, LoadOptions opts = {}) {
  std::istringstream in(text);
  return parse_dialog_corpus(in, opts);
}

std::string dialog_line(const std::string& id, int n) {
  std::string s = R"({"id":")" + id + R"(","utterances":[)";
  for (int i = 0; i < n; ++i) {
    if (i) s += ',';
    s += R"({"speaker":"A","text":"line )" + std::to_string(i) + R"("})";
  }
  return s + "]}\n";
}

TEST(DialogCorpus, DecodesRecords) {
  const auto d = parse(
      R"({"id":"d1","utterances":[{"speaker":"Joey","text":"How you doin'?"},{"speaker":"Rachel","text":"Fine."}]})"
      "\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].id, "d1");
  ASSERT_EQ(d[0].utterances.size(), 2u);
  EXPECT_EQ(d[0].utterances[0].to_line(), "Joey: How you doin'?");
  EXPECT_EQ(d[0].render(), "Joey: How you doin'?\nRachel: Fine.");
  EXPECT_EQ(d[0].full_text(), "How you doin'?\nFine.");
}

TEST(DialogCorpus, EnforcesUtteranceBound) {
  EXPECT_NO_THROW(parse(dialog_line("ok", 15)));
  EXPECT_THROW(parse(dialog_line("long", 16)), ValidationError);
  EXPECT_THROW(parse(dialog_line("none", 0)), ValidationError);
  LoadOptions permissive;
  permissive.permissive = true;
  EXPECT_EQ(parse(dialog_line("long", 16), permissive).size(), 1u);
}

TEST(DialogCorpus, TranscriptNotesCountingIsConfigurable) {
  std::string line = R"j({"id":"n","utterances":[{"speaker":"TRANSCRIPT NOTE","text":"(They sit.)"})j";
  for (int i = 0; i < 15; ++i) line += R"(,{"speaker":"A","text":"x"})";
  line += "]}\n";
  EXPECT_THROW(parse(line), ValidationError);
  LoadOptions opts;
  opts.count_transcript_notes = false;
  EXPECT_EQ(parse(line, opts).size(), 1u);
}

TEST(DialogCorpus, ErrorsNameTheLine) {
  try {
    parse(dialog_line("a", 1) + "{not json\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse(R"({"id":"x","utterances":[{"speaker":"","text":"t"}]})"
                     "\n"),
               ParseError);
  EXPECT_THROW(parse(R"({"id":"x"})"
                     "\n"),
               ParseError);
  EXPECT_THROW(parse(dialog_line("dup", 1) + dialog_line("dup", 2)), ValidationError);
}

TEST(DialogCorpus, RoundTripIsByteIdentical) {
  const std::string text = testing::read_data("toy/dialogs.jsonl");
  std::string out;
  for (const auto& d : parse(text)) out += serialize_dialog(d) + "\n";
  EXPECT_EQ(out, text);
}

std::vector<Dialog> toy_dialogs() { return parse(testing::read_data("toy/dialogs.jsonl")); }

TEST(Annotations, AcceptsAndFlags) {
  const auto dialogs = toy_dialogs();
  std::istringstream in(
      R"({"dialog_id":"t02","surface":"Thanksgiving","category":"SocialCulture","foreignness":3,"occurrence_index":0})"
      "\n"
      R"({"dialog_id":"t06","surface":"pancakes","category":"Material Culture","foreignness":1,"occurrence_index":0})"
      "\n"
      R"({"dialog_id":"t06","surface":"pizza","category":"MaterialCulture","foreignness":2,"occurrence_index":0})"
      "\n");
  const auto set = parse_csi_annotations(in, dialogs);
  ASSERT_EQ(set.annotations.size(), 3u);
  EXPECT_EQ(set.annotations[0].category, CsiCategory::SocialCulture);
  EXPECT_FALSE(set.annotations[0].excluded_from_analysis());
  EXPECT_TRUE(set.annotations[1].excluded_from_analysis());
  EXPECT_FALSE(set.annotations[2].surface_found);
  ASSERT_EQ(set.warnings.size(), 1u);
  EXPECT_EQ(set.warnings[0].line, 3u);
}

TEST(Annotations, RejectsInvalidRecords) {
  const auto dialogs = toy_dialogs();
  auto load = [&](const std::string& line) {
    std::istringstream in(line + "\n");
    return parse_csi_annotations(in, dialogs);
  };
  EXPECT_THROW(load(R"({"dialog_id":"t02","surface":"turkey","category":"Food","foreignness":2,"occurrence_index":0})"),
               ValidationError);
  EXPECT_THROW(load(R"({"dialog_id":"t02","surface":"turkey","category":"Ecology","foreignness":4,"occurrence_index":0})"),
               ValidationError);
  EXPECT_THROW(load(R"({"dialog_id":"zz","surface":"turkey","category":"Ecology","foreignness":2,"occurrence_index":0})"),
               ValidationError);
  const std::string dup =
      R"({"dialog_id":"t02","surface":"turkey","category":"Ecology","foreignness":2,"occurrence_index":0})";
  EXPECT_THROW(load(dup + "\n" + dup), ValidationError);
}

TEST(Annotations, CategoryAliases) {
  EXPECT_EQ(parse_category("Institutions, Organizations and Ideas"),
            CsiCategory::InstitutionsOrganisationsIdeas);
  EXPECT_EQ(parse_category("socially sensitive or taboo topics"), CsiCategory::SociallySensitiveOrTaboo);
  EXPECT_EQ(parse_category("humor"), CsiCategory::Humour);
  EXPECT_FALSE(parse_category("Cuisine"));
  for (auto c : kAllCsiCategories) EXPECT_EQ(parse_category(to_string(c)), c);
}

TEST(Structure, ReportsMismatches) {
  const Dialog d{"x", {{"Franny", "Hey, Monica!"}, {"Monica Geller", "Hey Frannie!"}}};
  AdaptationRecord same{"x", "m", "india", d.utterances, ""};
  EXPECT_TRUE(validate_adaptation_structure(d, same).clean());

  AdaptationRecord renamed = same;
  renamed.utterances[0].speaker = "Riya";
  renamed.utterances[1].speaker = " monica geller ";
  const auto r = validate_adaptation_structure(d, renamed);
  ASSERT_EQ(r.speaker_mismatches.size(), 1u);
  EXPECT_EQ(r.speaker_mismatches[0], (SpeakerMismatch{0, "Franny", "Riya"}));
  EXPECT_TRUE(r.utterance_count_match);

  AdaptationRecord empty{"x", "m", "india", {}, "I cannot adapt this."};
  const auto e = validate_adaptation_structure(d, empty);
  EXPECT_TRUE(e.empty_adaptation);
  EXPECT_FALSE(e.utterance_count_match);
  EXPECT_EQ(serialize_structure_report(e).find('\n'), std::string::npos);
}

TEST(Structure, CountMatchIffEqualCounts) {
  const Dialog d{"x", {{"A", "1"}, {"B", "2"}, {"A", "3"}}};
  for (std::size_t n = 0; n <= 5; ++n) {
    AdaptationRecord a{"x", "m", "india", {}, ""};
    for (std::size_t i = 0; i < n; ++i) a.utterances.push_back({i % 2 ? "B" : "A", "t"});
    EXPECT_EQ(validate_adaptation_structure(d, a).utterance_count_match, n == 3);
  }
}

TEST(Stats, CountsAndBreakdowns) {
  EXPECT_EQ(corpus_stats({}, {}).dialogs, 0u);
  const auto dialogs = toy_dialogs();
  std::istringstream in(testing::read_data("toy/annotations.jsonl"));
  const auto set = parse_csi_annotations(in, dialogs);
  const auto s = corpus_stats(dialogs, set.annotations);
  EXPECT_EQ(s.dialogs, 10u);
  EXPECT_EQ(s.utterances, 30u);
  EXPECT_EQ(s.speakers, 20u);
  EXPECT_EQ(s.csi_occurrences, 19u);
  std::size_t by_cat = 0;
  for (auto n : s.per_category) by_cat += n;
  std::size_t by_level = 0;
  for (auto n : s.per_foreignness) by_level += n;
  EXPECT_EQ(by_cat, s.csi_occurrences);
  EXPECT_EQ(by_level, s.csi_occurrences);
  EXPECT_EQ(s.per_category[static_cast<std::size_t>(CsiCategory::InstitutionsOrganisationsIdeas)], 2u);

  std::vector<CsiAnnotation> dangling{{"nope", "x", CsiCategory::Ecology, 2, 0, true}};
  EXPECT_THROW(corpus_stats(dialogs, dangling), ValidationError);
}

TEST(Stats, SurfaceOccurrences) {
  EXPECT_EQ(count_surface_occurrences("Rohan", "You know Rohan? I know rohan."), 2u);
  EXPECT_EQ(count_surface_occurrences("ice cream", "Ice-cream, ICE CREAM!"), 2u);
  EXPECT_EQ(count_surface_occurrences("x", ""), 0u);
}

TEST(Convert, CsvLayoutGroupsRowsById) {
  std::istringstream in(
      "dialogue_id,Speaker,Utterance\n"
      "7,Ross,\"Hi, Rach.\"\n"
      "7,Rachel,Hi.\n"
      "8,Joey,How you doin'?\n");
  const auto d = convert_csv_layout(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].id, "7");
  EXPECT_EQ(d[0].utterances[0], (Utterance{"Ross", "Hi, Rach."}));
  EXPECT_EQ(d[1].utterances.size(), 1u);
}

TEST(Convert, TextLayoutBlocks) {
  std::istringstream in(
      "# s01\n"
      "Ross: Hi.\n"
      "Rachel: Hi.\n"
      "\n"
      "Joey: How you doin'?\n");
  const auto d = convert_text_layout(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].id, "s01");
  EXPECT_EQ(d[1].id, "d0001");
  EXPECT_EQ(d[1].utterances[0].speaker, "Joey");
}

TEST(Adaptations, RoundTrip) {
  AdaptationRecord r{"x", "model/a", "india", {{"A", "namaste"}}, "A: namaste\n"};
  std::istringstream in(serialize_adaptation(r) + "\n");
  const auto back = parse_adaptations(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], r);
}

}  // namespace
}  // namespace adapteval
