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
#include <cmath>
#include <random>
#include <sstream>

#include "adapteval/error.hpp"
#include "adapteval/stats.hpp"
#include "oracles.hpp"

namespace adapteval {
namespace {

using V = std::vector<double>;

TauResult tau(const V& x, const V& y, PValueMethod m = PValueMethod::Normal) { return kendall_tau_b(x, y, m); }

TEST(KendallTau, HandCases) {
  EXPECT_NEAR(tau({1, 2, 2, 3}, {1, 3, 2, 3}).tau, 0.8, 1e-12);
  EXPECT_NEAR(tau({1, 2, 3}, {1, 2, 3}).tau, 1.0, 1e-12);
  EXPECT_NEAR(tau({1, 2, 3}, {3, 2, 1}).tau, -1.0, 1e-12);
  const auto r = tau({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {2, 1, 4, 3, 6, 5, 8, 7, 10, 9});
  EXPECT_NEAR(r.tau, 0.7777777777777778, 1e-12);
  EXPECT_EQ(r.n, 10u);
  EXPECT_EQ(r.method, PValueMethod::Normal);
}

TEST(KendallTau, NormalApproxPValues) {
  EXPECT_NEAR(normal_approx_p(1.0, 3), 0.11718508719813814, 1e-12);
  EXPECT_NEAR(normal_approx_p(0.6, 10), 0.015737222266311027, 1e-12);
  EXPECT_NEAR(tau({1, 2, 3}, {1, 2, 3}).p_value, 0.11718508719813814, 1e-12);
}

TEST(KendallTau, ExactPValue) {
  const auto r = tau({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {2, 1, 4, 3, 6, 5, 8, 7, 10, 9}, PValueMethod::Exact);
  EXPECT_EQ(r.method, PValueMethod::Exact);
  // 3434 of the 10! permutations are at least as extreme.
  EXPECT_NEAR(r.p_value, 3434.0 / 3628800.0, 1e-12);
  EXPECT_NEAR(normal_approx_p(r.tau, 10), 0.001745118699528905, 1e-12);
  // n = 3, perfect agreement: 2 of 6 permutations are as extreme.
  EXPECT_NEAR(tau({1, 2, 3}, {1, 2, 3}, PValueMethod::Exact).p_value, 2.0 / 6.0, 1e-12);
}

TEST(KendallTau, MatchesBruteForceOracle) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> len(2, 8);
  std::uniform_int_distribution<int> val(1, 5);
  int checked = 0;
  while (checked < 1000) {
    const int n = len(rng);
    V x(n), y(n);
    for (auto& v : x) v = val(rng);
    for (auto& v : y) v = val(rng);
    const bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
                          std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (constant) {
      EXPECT_THROW(tau(x, y), UndefinedStatistic);
      continue;
    }
    ASSERT_NEAR(tau(x, y).tau, oracle::tau_b(x, y), 1e-12);
    ++checked;
  }
}

TEST(KendallTau, InvariantUnderMonotoneTransform) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> val(1, 5);
  for (int t = 0; t < 200; ++t) {
    V x(12), y(12);
    for (auto& v : x) v = val(rng);
    for (auto& v : y) v = val(rng);
    V fx(12);
    std::transform(x.begin(), x.end(), fx.begin(), [](double v) { return std::exp(v) + 3; });
    try {
      const auto a = tau(x, y);
      const auto b = tau(fx, y);
      EXPECT_NEAR(a.tau, b.tau, 1e-12);
      EXPECT_NEAR(tau(y, x).tau, a.tau, 1e-12);
      EXPECT_GE(a.tau, -1.0);
      EXPECT_LE(a.tau, 1.0);
    } catch (const UndefinedStatistic&) {
    }
  }
}

TEST(KendallTau, Errors) {
  EXPECT_THROW(tau({1, 2}, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(tau({1}, {1}), std::invalid_argument);
  EXPECT_THROW(tau({1, 1, 1}, {1, 2, 3}), UndefinedStatistic);
  V big(11);
  for (int i = 0; i < 11; ++i) big[i] = i;
  EXPECT_THROW(tau(big, big, PValueMethod::Exact), std::invalid_argument);
}

struct AspectVectors {
  const char* aspect;
  V judge;
  V human;
  double expected_tau;
};

// Twenty dialogs scored by the judge and by a human rater.
const std::vector<AspectVectors> kRated = {
    {"naturalness",
     {3, 2, 4, 1, 1, 5, 1, 3, 5, 1, 5, 2, 1, 1, 4, 4, 1, 2, 1, 5},
     {3, 2, 4, 5, 1, 5, 1, 1, 4, 4, 5, 2, 1, 1, 4, 4, 1, 2, 2, 5},
     0.6291942653272029},
    {"localisation",
     {5, 2, 3, 4, 1, 5, 2, 2, 4, 4, 3, 3, 3, 3, 3, 4, 2, 3, 4, 5},
     {5, 2, 3, 4, 1, 2, 1, 5, 4, 4, 2, 3, 3, 3, 3, 5, 2, 3, 5, 5},
     0.6033597689212368},
    {"content_preservation",
     {2, 2, 5, 4, 1, 3, 4, 3, 3, 4, 2, 1, 1, 1, 3, 1, 3, 4, 1, 5},
     {2, 5, 4, 4, 1, 3, 3, 3, 3, 3, 3, 3, 2, 1, 5, 3, 3, 4, 1, 1},
     0.38957773272522384},
    {"stereotypical",
     {3, 3, 3, 3, 1, 5, 1, 1, 2, 1, 4, 4, 4, 3, 4, 4, 2, 4, 2, 1},
     {3, 3, 5, 3, 3, 5, 5, 5, 2, 1, 5, 5, 4, 2, 4, 4, 1, 4, 2, 1},
     0.4660804389029773},
    {"offensiveness",
     {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 3, 1},
     {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 3, 1},
     1.0},
};

TEST(KendallTau, TwentyDialogVectors) {
  for (const auto& a : kRated) {
    const auto r = tau(a.judge, a.human);
    EXPECT_NEAR(r.tau, a.expected_tau, 1e-12) << a.aspect;
    EXPECT_NEAR(r.tau, oracle::tau_b(a.judge, a.human), 1e-12) << a.aspect;
    EXPECT_EQ(r.band, TauBand::Strong) << a.aspect;
  }
  EXPECT_NEAR(tau(kRated[0].judge, kRated[0].human).p_value, 0.00010505331992244155, 1e-12);
}

TEST(InterpretTau, Bands) {
  EXPECT_EQ(interpret_tau(0.05), TauBand::VeryWeak);
  EXPECT_EQ(interpret_tau(0.1), TauBand::Weak);
  EXPECT_EQ(interpret_tau(-0.25), TauBand::Moderate);
  EXPECT_EQ(interpret_tau(0.3), TauBand::Strong);
  EXPECT_EQ(interpret_tau(0.63), TauBand::Strong);
  EXPECT_EQ(interpret_tau(-1.0), TauBand::Strong);
  EXPECT_EQ(to_string(TauBand::VeryWeak), "very weak");
  EXPECT_EQ(to_string(PValueMethod::Exact), "exact-permutation");
}

TEST(CorrelationMatrix, SymmetricWithUnitDiagonal) {
  const std::vector<Column> cols = {{"a", {1, 2, 3, 4, 5}}, {"b", {2, 1, 4, 3, 5}}, {"c", {5, 4, 3, 2, 1}},
                                    {"flat", {3, 3, 3, 3, 3}}};
  const auto m = correlation_matrix(cols, 0.05);
  ASSERT_EQ(m.labels.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_TRUE(m.at(i, i));
    EXPECT_DOUBLE_EQ(m.at(i, i)->tau, 1.0);
    EXPECT_DOUBLE_EQ(m.at(i, i)->p_value, 0.0);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(m.at(i, j)->tau, m.at(j, i)->tau);
  }
  EXPECT_DOUBLE_EQ(m.at(0, 2)->tau, -1.0);
  EXPECT_NEAR(m.at(0, 1)->tau, 0.6, 1e-12);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_FALSE(m.at(3, i).has_value());
    EXPECT_FALSE(m.at(i, 3).has_value());
  }
  EXPECT_FALSE(m.significant(0, 1));
  EXPECT_FALSE(m.significant(0, 3));
  EXPECT_THROW(correlation_matrix({{"a", {1, 2}}, {"b", {1, 2, 3}}}), std::invalid_argument);
}

TEST(HumanRatings, AveragesRaters) {
  std::istringstream in(
      "dialog_id,rater_id,naturalness,localisation,content preservation,offensiveness,stereotypical\n"
      "d1,r1,4,5,3,1,1\n"
      "d1,r2,5,4,3,1,2\n"
      "d2,r1,2,2,2,2,2\n");
  const auto r = read_human_ratings(in);
  ASSERT_EQ(r.size(), 2u);
  const auto& d1 = r.at("d1");
  EXPECT_EQ(d1.raters, 2u);
  EXPECT_DOUBLE_EQ(d1.mean[static_cast<std::size_t>(judge::Aspect::Naturalness)], 4.5);
  EXPECT_DOUBLE_EQ(d1.mean[static_cast<std::size_t>(judge::Aspect::Stereotypical)], 1.5);
  EXPECT_DOUBLE_EQ(d1.mean[static_cast<std::size_t>(judge::Aspect::ContentPreservation)], 3.0);
}

TEST(HumanRatings, RejectsBadInput) {
  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_human_ratings(in);
  };
  const std::string header = "dialog_id,rater_id,naturalness,localisation,content_preservation,offensiveness,stereotypical\n";
  EXPECT_THROW(read(header + "d1,r1,6,5,3,1,1\n"), Error);
  EXPECT_THROW(read(header + "d1,r1,x,5,3,1,1\n"), Error);
  EXPECT_THROW(read(header + "d1,r1,4,5\n"), Error);
  EXPECT_THROW(read("dialog_id,rater_id,naturalness\nd1,r1,4\n"), Error);
  try {
    read(header + "d1,r1,4,5,3,1,1\nd2,r1,4,0,3,1,1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find('3'), std::string::npos) << e.what();
  }
}

TEST(SampleIds, DeterministicWithoutReplacement) {
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) ids.push_back("d" + std::to_string(i));
  const auto a = sample_ids(ids, 20, 7);
  EXPECT_EQ(a, sample_ids(ids, 20, 7));
  EXPECT_NE(a, sample_ids(ids, 20, 8));
  ASSERT_EQ(a.size(), 20u);
  std::set<std::string> uniq(a.begin(), a.end());
  EXPECT_EQ(uniq.size(), 20u);
  EXPECT_EQ(sample_ids(ids, 80, 1).size(), 50u);
  EXPECT_TRUE(sample_ids({}, 3, 1).empty());
}

}  // namespace
}  // namespace adapteval
