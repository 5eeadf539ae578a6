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

// Straightforward reference implementations used to check the optimized
// library code. Kept deliberately naive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace adapteval::oracle {

/// O(n^2) pair counting with the textbook tie corrections.
inline double tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0) {
        ++ties_x;
      } else if (dy == 0) {
        ++ties_y;
      } else if ((dx > 0) == (dy > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
  return static_cast<double>(concordant - discordant) / std::sqrt((n0 - ties_x) * (n0 - ties_y));
}

/// Full-matrix Levenshtein over bytes.
inline std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

inline int ratio(const std::string& a, const std::string& b) {
  const double len = static_cast<double>(std::max(a.size(), b.size()));
  if (len == 0) return 100;
  const double r = 100.0 * (len - static_cast<double>(levenshtein(a, b))) / len;
  return static_cast<int>(std::floor(r + 0.5 + 1e-9));
}

/// Token-set formula over whitespace-separated lowercase tokens:
/// max(r(t0, t0+a), r(t0, t0+b), r(t0+a, t0+b)) with t0 the sorted shared
/// tokens and a, b the sorted leftovers.
inline int token_set(const std::string& a, const std::string& b) {
  auto toks = [](const std::string& s) {
    std::istringstream in(s);
    std::set<std::string> out;
    for (std::string t; in >> t;) out.insert(t);
    return out;
  };
  const auto ta = toks(a);
  const auto tb = toks(b);
  if (ta.empty() || tb.empty()) return 0;
  std::string t0, ra, rb;
  auto append = [](std::string& s, const std::string& t) { s += (s.empty() ? "" : " ") + t; };
  for (const auto& t : ta) {
    if (tb.count(t)) append(t0, t);
  }
  std::string s1 = t0, s2 = t0;
  for (const auto& t : ta) {
    if (!tb.count(t)) append(s1, t);
  }
  for (const auto& t : tb) {
    if (!ta.count(t)) append(s2, t);
  }
  return std::max({ratio(t0, s1), ratio(t0, s2), ratio(s1, s2)});
}

}  // namespace adapteval::oracle
