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

#include "adapteval/judge/types.hpp"

#include <cctype>

#include "adapteval/util/format.hpp"

namespace adapteval::judge {

std::string_view to_string(EditKind k) {
  switch (k) {
    case EditKind::Modify: return "modify";
    case EditKind::Insert: return "insert";
    case EditKind::Delete: return "delete";
  }
  return "modify";
}

Edit Edit::modify(std::string source, std::string target, std::size_t utt) {
  return {std::move(source), std::move(target), EditKind::Modify, utt};
}

Edit Edit::insert(std::string target, std::size_t utt) {
  return {{}, std::move(target), EditKind::Insert, utt};
}

Edit Edit::remove(std::string source, std::size_t utt) {
  return {std::move(source), {}, EditKind::Delete, utt};
}

bool Edit::well_formed() const {
  switch (kind) {
    case EditKind::Modify: return !source.empty() && !target.empty();
    case EditKind::Insert: return source.empty() && !target.empty();
    case EditKind::Delete: return !source.empty() && target.empty();
  }
  return false;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Preservation: return "Preservation";
    case Strategy::Addition: return "Addition";
    case Strategy::Omission: return "Omission";
    case Strategy::Localisation: return "Localisation";
    case Strategy::Globalisation: return "Globalisation";
    case Strategy::Transformation: return "Transformation";
    case Strategy::Creation: return "Creation";
  }
  return "Preservation";
}

std::optional<Strategy> parse_strategy_name(std::string_view name) {
  const std::string n = util::to_lower(util::trim(name));
  if (n == "preservation") return Strategy::Preservation;
  if (n == "addition") return Strategy::Addition;
  if (n == "omission") return Strategy::Omission;
  if (n == "localisation" || n == "localization") return Strategy::Localisation;
  if (n == "globalisation" || n == "globalization") return Strategy::Globalisation;
  if (n == "transformation") return Strategy::Transformation;
  if (n == "creation") return Strategy::Creation;
  return std::nullopt;
}

std::string_view to_string(Aspect a) {
  switch (a) {
    case Aspect::Naturalness: return "naturalness";
    case Aspect::Localisation: return "localisation";
    case Aspect::Offensiveness: return "offensiveness";
    case Aspect::Stereotypical: return "stereotypical";
    case Aspect::ContentPreservation: return "content_preservation";
  }
  return "naturalness";
}

std::string_view display_name(Aspect a) {
  switch (a) {
    case Aspect::Naturalness: return "Naturalness";
    case Aspect::Localisation: return "Localisation";
    case Aspect::Offensiveness: return "Offensiveness";
    case Aspect::Stereotypical: return "Stereotypical";
    case Aspect::ContentPreservation: return "Content Preservation";
  }
  return "Naturalness";
}

std::optional<Aspect> parse_aspect(std::string_view name) {
  std::string key;
  for (unsigned char c : name) {
    if (std::isalpha(c)) key += static_cast<char>(std::tolower(c));
  }
  if (key == "naturalness") return Aspect::Naturalness;
  if (key == "localisation" || key == "localization") return Aspect::Localisation;
  if (key == "offensiveness") return Aspect::Offensiveness;
  if (key == "stereotypical" || key == "stereotype" || key == "stereotypes") {
    return Aspect::Stereotypical;
  }
  if (key == "contentpreservation") return Aspect::ContentPreservation;
  return std::nullopt;
}

}  // namespace adapteval::judge
