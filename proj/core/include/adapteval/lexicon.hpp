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

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adapteval {

/// Surface patterns typical of a target culture. Used to flag edits that
/// introduce a target-culture item where the source had none.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::string>& terms);

  /// One term per line; blank lines and lines starting with '#' are skipped.
  static Lexicon parse(std::istream& in);
  /// Built-in list for "india"; empty for any other culture id.
  static Lexicon builtin(std::string_view culture_id);

  /// Normalized, de-duplicated, in input order.
  const std::vector<std::string>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// First term fuzzily contained in `text` at `threshold`.
  std::optional<std::string> find_in(std::string_view text, int threshold) const;

 private:
  std::vector<std::string> terms_;
};

}  // namespace adapteval
