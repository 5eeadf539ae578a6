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

#include <algorithm>
#include <random>

#include "adapteval/textmatch.hpp"
#include "oracles.hpp"

namespace adapteval::textmatch {
namespace {

std::string random_string(std::mt19937& rng, std::size_t max_len, std::string_view alphabet) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (auto& c : s) c = alphabet[pick(rng)];
  return s;
}

std::string random_tokens(std::mt19937& rng, std::size_t max_tokens) {
  static const std::vector<std::string> vocab = {"ice", "cream", "sub", "meatball", "chai", "naan",
                                                 "the", "a", "cafe", "vegan", "goa", "beach"};
  std::uniform_int_distribution<std::size_t> n(0, max_tokens);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::string s;
  for (std::size_t i = 0, k = n(rng); i < k; ++i) s += (i ? " " : "") + vocab[pick(rng)];
  return s;
}

TEST(Normalize, Rules) {
  EXPECT_EQ(normalize("Wendy's!"), "wendy s");
  EXPECT_EQ(normalize("  Ice   Cream "), "ice cream");
  EXPECT_EQ(normalize(""), "");
  EXPECT_EQ(normalize("“Son of a bitch” — is back…"), "son of a bitch is back");
  EXPECT_EQ(normalize("Café Déjà"), "café déjà");
}

TEST(SimilarityRatio, Examples) {
  EXPECT_EQ(similarity_ratio("abc", "abc"), 100);
  EXPECT_EQ(similarity_ratio("kitten", "sitting"), 57);
  EXPECT_EQ(similarity_ratio("a", ""), 0);
  EXPECT_EQ(similarity_ratio("", ""), 100);
  EXPECT_EQ(edit_distance("chai", "chaï"), 1u);
}

TEST(SimilarityRatio, MatchesDpOracle) {
  std::mt19937 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_string(rng, 32, "abcde ");
    const auto b = random_string(rng, 32, "abcde ");
    ASSERT_EQ(similarity_ratio(a, b), oracle::ratio(a, b)) << '"' << a << "\" vs \"" << b << '"';
    ASSERT_EQ(similarity_ratio(a, b), similarity_ratio(b, a));
    ASSERT_EQ(similarity_ratio(a, b) == 100, a == b);
  }
}

TEST(TokenSetRatio, Examples) {
  EXPECT_EQ(token_set_ratio("ice cream", "cream ice"), 100);
  EXPECT_EQ(token_set_ratio("meatball sub", "meatball sandwich"), 67);
  EXPECT_EQ(token_set_ratio("", "x"), 0);
  EXPECT_EQ(token_set_ratio("Ice-Cream", "ice cream"), 100);
}

TEST(TokenSetRatio, MatchesFormulaOracle) {
  std::mt19937 rng(99);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_tokens(rng, 6);
    const auto b = random_tokens(rng, 6);
    ASSERT_EQ(token_set_ratio(a, b), oracle::token_set(a, b)) << '"' << a << "\" vs \"" << b << '"';
  }
}

TEST(TokenSetRatio, PermutationInvariant) {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto toks = tokens(random_tokens(rng, 6));
    const auto b = random_tokens(rng, 6);
    std::string a1, a2;
    for (const auto& t : toks) a1 += t + " ";
    std::shuffle(toks.begin(), toks.end(), rng);
    for (const auto& t : toks) a2 += t + " ";
    ASSERT_EQ(token_set_ratio(a1, b), token_set_ratio(a2, b));
  }
}

TEST(ContainsFuzzy, Examples) {
  const auto exact = contains_fuzzy("Thanksgiving", "Are you coming to Thanksgiving dinner?");
  EXPECT_TRUE(exact.found);
  EXPECT_EQ(exact.best.score, 100);
  // A superset window also scores 100, so the earliest start wins.
  EXPECT_EQ(exact.best.matched_window, "to thanksgiving");

  EXPECT_FALSE(contains_fuzzy("Thanksgiving", "Remember the sweater I gave you on Diwali last time?", 80).found);

  const auto empty = contains_fuzzy("x", "");
  EXPECT_FALSE(empty.found);
  EXPECT_EQ(empty.best.score, 0);

  EXPECT_TRUE(contains_fuzzy("candles", "the only candle we have", 80).found);
  EXPECT_THROW(contains_fuzzy("", "text"), std::invalid_argument);
  EXPECT_THROW(contains_fuzzy("x", "text", 101), std::invalid_argument);
}

TEST(ContainsFuzzy, WindowSpanAndTies) {
  const auto hit = contains_fuzzy("ice cream", "I like ice cream and ice cream");
  EXPECT_EQ(hit.best.window_span, (std::pair<std::size_t, std::size_t>{1, 4}));
  EXPECT_EQ(hit.best.matched_window, "like ice cream");
  // Same start: width k beats k-1 and k+1.
  const auto same_start = contains_fuzzy("ice cream", "ice cream cone");
  EXPECT_EQ(same_start.best.matched_window, "ice cream");
}

TEST(ContainsFuzzy, SubsetWindowScoresFull) {
  // A narrower window holding only some of the needle's tokens scores 100.
  const auto partial = contains_fuzzy("Parrot Jungle", "through the jungle gym");
  EXPECT_TRUE(partial.found);
  EXPECT_EQ(partial.best.matched_window, "jungle");
  EXPECT_TRUE(contains_fuzzy("Wendy's", "Let's go").found);
  EXPECT_FALSE(contains_fuzzy("Wendy's", "Lets go").found);
}

TEST(ContainsFuzzy, AppendingNeverLowersScore) {
  std::mt19937 rng(77);
  for (int i = 0; i < 300; ++i) {
    auto needle = random_tokens(rng, 3);
    if (needle.empty()) needle = "chai";
    const auto h = random_tokens(rng, 8);
    const auto tail = random_tokens(rng, 5);
    ASSERT_GE(contains_fuzzy(needle, h + " " + tail).best.score, contains_fuzzy(needle, h).best.score);
  }
}

}  // namespace
}  // namespace adapteval::textmatch
