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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adapteval::util {

/// Formats num/den with `decimals` digits, rounding half away from zero.
/// Exact for integer inputs; used for every count-derived percentage and mean.
std::string format_ratio(std::int64_t num, std::int64_t den, int decimals);

/// Half-away-from-zero rounding of a double to `decimals` digits. A 1e-9
/// relative nudge absorbs binary representation error at .5 boundaries.
std::string format_fixed(double value, int decimals);

/// Like format_ratio but drops a trailing ".0...0" ("0.0" -> "0").
std::string format_ratio_compact(std::int64_t num, std::int64_t den, int decimals);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);
bool iequals(std::string_view a, std::string_view b);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// File-name-safe form of a model id ("meta-llama/Llama-2" -> "meta-llama_Llama-2").
std::string slug(std::string_view id);

}  // namespace adapteval::util
