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
#include <string>
#include <vector>

namespace adapteval::util {

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
/// Returns every row including the header. Throws ParseError on an
/// unterminated quote.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

/// Quotes a field when it contains a comma, quote, or line break.
std::string csv_escape(const std::string& field);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace adapteval::util
