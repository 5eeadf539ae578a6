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

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adapteval/judge/types.hpp"

namespace adapteval {

enum class TauBand { VeryWeak, Weak, Moderate, Strong };

/// "very weak", "weak", "moderate", "strong".
std::string_view to_string(TauBand b);

/// By |tau|: [0, .1) very weak, [.1, .2) weak, [.2, .3) moderate, [.3, 1] strong.
TauBand interpret_tau(double tau);

enum class PValueMethod { Normal, Exact };

/// "normal-approx", "exact-permutation".
std::string_view to_string(PValueMethod m);

inline constexpr std::size_t kMaxExactN = 10;

struct TauResult {
  double tau = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  TauBand band = TauBand::VeryWeak;
  PValueMethod method = PValueMethod::Normal;
};

/// Kendall tau-b with tie correction, O(n log n). Two-sided p-value from the
/// normal approximation z = 3 tau sqrt(n(n-1)) / sqrt(2(2n+5)), or from all
/// n! permutations of y (n <= kMaxExactN). Throws std::invalid_argument on a
/// length mismatch, n < 2, or Exact with n > kMaxExactN, and
/// UndefinedStatistic when either side is constant.
TauResult kendall_tau_b(std::span<const double> x, std::span<const double> y,
                        PValueMethod method = PValueMethod::Normal);

double normal_approx_p(double tau, std::size_t n);

struct CorrelationMatrix {
  std::vector<std::string> labels;
  double significance_level = 0.05;
  /// Row-major; nullopt where tau is undefined (a constant column).
  std::vector<std::vector<std::optional<TauResult>>> cells;

  const std::optional<TauResult>& at(std::size_t i, std::size_t j) const { return cells[i][j]; }
  bool significant(std::size_t i, std::size_t j) const;
};

using Column = std::pair<std::string, std::vector<double>>;

/// Pairwise tau-b over named columns. The diagonal is tau = 1, p = 0 for
/// non-constant columns. Throws std::invalid_argument on ragged columns.
CorrelationMatrix correlation_matrix(const std::vector<Column>& columns,
                                     double significance_level = 0.05,
                                     PValueMethod method = PValueMethod::Normal);

/// Per-dialog human ratings averaged over raters, indexed by judge::Aspect.
struct HumanRating {
  std::array<double, judge::kAspectCount> mean{};
  std::size_t raters = 0;
};

/// CSV with header dialog_id, rater_id and one column per aspect (names as
/// accepted by judge::parse_aspect), integer ratings 1..5. Throws
/// ParseError or ValidationError naming the offending line.
std::map<std::string, HumanRating> read_human_ratings(std::istream& in);

/// k ids drawn without replacement by Fisher-Yates over mt19937_64(seed),
/// returned in draw order. Stable across platforms.
std::vector<std::string> sample_ids(std::vector<std::string> ids, std::size_t k,
                                    std::uint64_t seed);

}  // namespace adapteval
