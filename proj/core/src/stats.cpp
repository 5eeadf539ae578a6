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

#include "adapteval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "adapteval/error.hpp"
#include "adapteval/util/csv.hpp"
#include "adapteval/util/format.hpp"

namespace adapteval {

namespace {

std::int64_t tie_pairs(std::int64_t t) { return t * (t - 1) / 2; }

// Counts pairs i < j with v[i] > v[j] while sorting v ascending.
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

int sign(double d) { return (d > 0) - (d < 0); }

std::int64_t pair_score(std::span<const double> x, const std::vector<double>& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) s += sign(x[i] - x[j]) * sign(y[i] - y[j]);
  }
  return s;
}

bool constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

double exact_p(std::span<const double> x, std::span<const double> y, std::int64_t observed) {
  std::vector<std::size_t> perm(y.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> permuted(y.size());
  std::int64_t extreme = 0;
  std::int64_t total = 0;
  const std::int64_t target = observed < 0 ? -observed : observed;
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) permuted[i] = y[perm[i]];
    const std::int64_t s = pair_score(x, permuted);
    if ((s < 0 ? -s : s) >= target) ++extreme;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

std::string_view to_string(TauBand b) {
  switch (b) {
    case TauBand::VeryWeak: return "very weak";
    case TauBand::Weak: return "weak";
    case TauBand::Moderate: return "moderate";
    case TauBand::Strong: return "strong";
  }
  return "very weak";
}

TauBand interpret_tau(double tau) {
  const double a = std::fabs(tau);
  if (a < 0.1) return TauBand::VeryWeak;
  if (a < 0.2) return TauBand::Weak;
  if (a < 0.3) return TauBand::Moderate;
  return TauBand::Strong;
}

std::string_view to_string(PValueMethod m) {
  return m == PValueMethod::Exact ? "exact-permutation" : "normal-approx";
}

double normal_approx_p(double tau, std::size_t n) {
  const double dn = static_cast<double>(n);
  const double z = 3.0 * tau * std::sqrt(dn * (dn - 1.0)) / std::sqrt(2.0 * (2.0 * dn + 5.0));
  return std::clamp(std::erfc(std::fabs(z) / std::sqrt(2.0)), 0.0, 1.0);
}

TauResult kendall_tau_b(std::span<const double> x, std::span<const double> y, PValueMethod method) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kendall_tau_b: length mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("kendall_tau_b: need at least 2 observations");
  if (method == PValueMethod::Exact && n > kMaxExactN) {
    throw std::invalid_argument("kendall_tau_b: exact p-value limited to n <= " +
                                std::to_string(kMaxExactN));
  }
  if (constant(x) || constant(y)) throw UndefinedStatistic("kendall_tau_b: constant input");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  const auto sn = static_cast<std::int64_t>(n);
  const std::int64_t n0 = tie_pairs(sn);
  std::int64_t n1 = 0;
  std::int64_t n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    n1 += tie_pairs(static_cast<std::int64_t>(j - i));
    for (std::size_t k = i; k < j;) {
      std::size_t m = k;
      while (m < j && y[order[m]] == y[order[k]]) ++m;
      n3 += tie_pairs(static_cast<std::int64_t>(m - k));
      k = m;
    }
    i = j;
  }

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  std::vector<double> buf(n);
  const std::int64_t swaps = merge_count(ys, buf, 0, n);
  std::int64_t n2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && ys[j] == ys[i]) ++j;
    n2 += tie_pairs(static_cast<std::int64_t>(j - i));
    i = j;
  }

  const std::int64_t s = n0 - n1 - n2 + n3 - 2 * swaps;
  const double denom =
      std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
  TauResult r;
  r.n = n;
  r.tau = std::clamp(static_cast<double>(s) / denom, -1.0, 1.0);
  r.band = interpret_tau(r.tau);
  r.method = method;
  r.p_value = method == PValueMethod::Exact ? exact_p(x, y, s) : normal_approx_p(r.tau, n);
  return r;
}

bool CorrelationMatrix::significant(std::size_t i, std::size_t j) const {
  const auto& c = cells[i][j];
  return c && c->p_value < significance_level;
}

CorrelationMatrix correlation_matrix(const std::vector<Column>& columns, double significance_level,
                                     PValueMethod method) {
  CorrelationMatrix m;
  m.significance_level = significance_level;
  const std::size_t k = columns.size();
  for (const auto& [label, values] : columns) {
    if (values.size() != columns.front().second.size()) {
      throw std::invalid_argument("correlation_matrix: column '" + label + "' has " +
                                  std::to_string(values.size()) + " values, expected " +
                                  std::to_string(columns.front().second.size()));
    }
    m.labels.push_back(label);
  }
  m.cells.assign(k, std::vector<std::optional<TauResult>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& xi = columns[i].second;
    if (xi.size() < 2 || constant(xi)) continue;
    m.cells[i][i] = TauResult{1.0, 0.0, xi.size(), TauBand::Strong, method};
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& xj = columns[j].second;
      if (constant(xj)) continue;
      m.cells[i][j] = kendall_tau_b(xi, xj, method);
      m.cells[j][i] = m.cells[i][j];
    }
  }
  return m;
}

std::map<std::string, HumanRating> read_human_ratings(std::istream& in) {
  const auto rows = util::read_csv(in);
  if (rows.empty()) throw ParseError(1, "human ratings: missing header");
  std::optional<std::size_t> id_col;
  std::optional<std::size_t> rater_col;
  std::array<std::optional<std::size_t>, judge::kAspectCount> aspect_col;
  for (std::size_t c = 0; c < rows[0].size(); ++c) {
    const auto h = util::to_lower(util::trim(rows[0][c]));
    if (h == "dialog_id" || h == "dialogue_id" || h == "id") {
      id_col = c;
    } else if (h == "rater_id" || h == "rater" || h == "annotator") {
      rater_col = c;
    } else if (auto a = judge::parse_aspect(h)) {
      aspect_col[static_cast<std::size_t>(*a)] = c;
    }
  }
  if (!id_col || !rater_col) throw ParseError(1, "human ratings: need dialog_id and rater_id");
  for (auto a : judge::kAllAspects) {
    if (!aspect_col[static_cast<std::size_t>(a)]) {
      throw ParseError(1, "human ratings: missing column '" + std::string(to_string(a)) + "'");
    }
  }

  std::map<std::string, std::array<std::int64_t, judge::kAspectCount>> sums;
  std::map<std::string, std::size_t> raters;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() == 1 && util::trim(row[0]).empty()) continue;
    if (row.size() != rows[0].size()) {
      throw ParseError(line, "expected " + std::to_string(rows[0].size()) + " fields, got " +
                                 std::to_string(row.size()));
    }
    const auto id = util::trim(row[*id_col]);
    const auto rater = util::trim(row[*rater_col]);
    if (id.empty()) throw ValidationError("line " + std::to_string(line) + ": empty dialog_id");
    if (!seen.emplace(id, rater).second) {
      throw ValidationError("line " + std::to_string(line) + ": duplicate rating by '" + rater +
                            "' for '" + id + "'");
    }
    auto& s = sums[id];
    for (auto a : judge::kAllAspects) {
      const auto i = static_cast<std::size_t>(a);
      const auto cell = util::trim(row[*aspect_col[i]]);
      if (cell.size() != 1 || cell[0] < '1' || cell[0] > '5') {
        throw ValidationError("line " + std::to_string(line) + ": " + std::string(to_string(a)) +
                              " rating '" + cell + "' is not an integer in 1..5");
      }
      s[i] += cell[0] - '0';
    }
    ++raters[id];
  }

  std::map<std::string, HumanRating> out;
  for (const auto& [id, s] : sums) {
    HumanRating h;
    h.raters = raters[id];
    for (std::size_t i = 0; i < judge::kAspectCount; ++i) {
      h.mean[i] = static_cast<double>(s[i]) / static_cast<double>(h.raters);
    }
    out.emplace(id, h);
  }
  return out;
}

std::vector<std::string> sample_ids(std::vector<std::string> ids, std::size_t k,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  k = std::min(k, ids.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t bound = ids.size() - i;
    const std::uint64_t limit = rng.max() - (rng.max() % bound + 1) % bound;
    std::uint64_t r = 0;
    do {
      r = rng();
    } while (r > limit);
    std::swap(ids[i], ids[i + static_cast<std::size_t>(r % bound)]);
  }
  ids.resize(k);
  return ids;
}

}  // namespace adapteval
