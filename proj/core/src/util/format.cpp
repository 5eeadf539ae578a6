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

#include "adapteval/util/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace adapteval::util {

namespace {

std::int64_t pow10(int decimals) {
  std::int64_t p = 1;
  for (int i = 0; i < decimals; ++i) p *= 10;
  return p;
}

std::string render_scaled(std::int64_t scaled, bool negative, int decimals) {
  const std::int64_t p = pow10(decimals);
  std::string out = negative && scaled != 0 ? "-" : "";
  out += std::to_string(scaled / p);
  if (decimals > 0) {
    std::string frac = std::to_string(scaled % p);
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0');
    out += frac;
  }
  return out;
}

}  // namespace

std::string format_ratio(std::int64_t num, std::int64_t den, int decimals) {
  if (den == 0) throw std::invalid_argument("format_ratio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const bool negative = num < 0;
  const std::int64_t mag = negative ? -num : num;
  // round(mag * 10^d / den) half up, in integers.
  const std::int64_t scaled = (2 * mag * pow10(decimals) + den) / (2 * den);
  return render_scaled(scaled, negative, decimals);
}

std::string format_ratio_compact(std::int64_t num, std::int64_t den, int decimals) {
  std::string s = format_ratio(num, den, decimals);
  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find_first_not_of('0', dot + 1) == std::string::npos) s.erase(dot);
  }
  if (s == "-0") s = "0";
  return s;
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return "nan";
  const bool negative = value < 0;
  const double mag = std::fabs(value) * static_cast<double>(pow10(decimals));
  const auto scaled = static_cast<std::int64_t>(std::floor(mag * (1.0 + 1e-9) + 0.5));
  return render_scaled(scaled, negative, decimals);
}

std::string trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n') {
    lines.pop_back();
  }
  if (text.empty()) lines.clear();
  return lines;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string slug(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (unsigned char c : id) {
    out += (std::isalnum(c) || c == '-' || c == '.' || c == '_') ? static_cast<char>(c) : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

}  // namespace adapteval::util
