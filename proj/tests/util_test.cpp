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

#include <set>
#include <sstream>
#include <thread>

#include "adapteval/util/csv.hpp"
#include "adapteval/util/format.hpp"
#include "adapteval/util/hash.hpp"
#include "adapteval/util/io.hpp"
#include "adapteval/util/parallel.hpp"
#include "test_support.hpp"

namespace adapteval::util {
namespace {

TEST(FormatRatio, RoundsHalfAwayFromZero) {
  EXPECT_EQ(format_ratio(1, 8, 2), "0.13");   // 0.125
  EXPECT_EQ(format_ratio(3225 * 100, 3256, 2), "99.05");
  EXPECT_EQ(format_ratio(1, 3, 2), "0.33");
  EXPECT_EQ(format_ratio(2, 3, 0), "1");
  EXPECT_EQ(format_ratio(-1, 8, 2), "-0.13");
  EXPECT_EQ(format_ratio(0, 5, 1), "0.0");
}

TEST(FormatRatio, CompactDropsZeroFraction) {
  EXPECT_EQ(format_ratio_compact(0, 7, 1), "0");
  EXPECT_EQ(format_ratio_compact(100, 1, 1), "100");
  EXPECT_EQ(format_ratio_compact(1, 4, 1), "0.3");
}

TEST(FormatFixed, AbsorbsRepresentationError) {
  EXPECT_EQ(format_fixed(2.675, 2), "2.68");
  EXPECT_EQ(format_fixed(0.6291942653272029, 2), "0.63");
  EXPECT_EQ(format_fixed(-0.125, 2), "-0.13");
  EXPECT_EQ(format_fixed(1.0, 0), "1");
}

TEST(Strings, TrimLowerSplitJoin) {
  EXPECT_EQ(trim("  a b \t\n"), "a b");
  EXPECT_EQ(to_lower("AbC"), "abc");
  EXPECT_EQ(split_lines("a\r\nb\n\nc"), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_TRUE(iequals("Localisation", "LOCALISATION"));
  EXPECT_EQ(join({"x", "y", "z"}, ", "), "x, y, z");
  EXPECT_EQ(slug("meta-llama/Llama-2 70B"), "meta-llama_Llama-2_70B");
}

TEST(Csv, EscapesAndReadsBack) {
  const std::string row = csv_row({"plain", "with,comma", "with \"quote\"", "multi\nline"});
  std::istringstream in("a,b,c,d\n" + row);
  const auto table = read_csv(in);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[1], (std::vector<std::string>{"plain", "with,comma", "with \"quote\"", "multi\nline"}));
}

TEST(Hash, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, AtomicWriteCreatesParentsAndReplaces) {
  testing::TempDir dir;
  const auto p = dir / "a/b/c.txt";
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  EXPECT_EQ(read_file(p), "two");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(p.parent_path())) ++files;
  EXPECT_EQ(files, 1u);
}

TEST(Parallel, EveryIndexOnceAndErrorsPropagate) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 8, [&](std::size_t i) { ++hits[i]; });
  EXPECT_EQ(std::set<int>(hits.begin(), hits.end()), std::set<int>{1});
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 3) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace adapteval::util
