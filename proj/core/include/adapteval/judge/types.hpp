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
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace adapteval::judge {

enum class EditKind { Modify, Insert, Delete };

std::string_view to_string(EditKind k);

/// One lexical modification between an original and an adapted utterance.
/// Insert has an empty source, Delete an empty target, Modify neither.
struct Edit {
  std::string source;
  std::string target;
  EditKind kind = EditKind::Modify;
  std::size_t utterance_index = 0;

  static Edit modify(std::string source, std::string target, std::size_t utt = 0);
  static Edit insert(std::string target, std::size_t utt = 0);
  static Edit remove(std::string source, std::size_t utt = 0);

  /// Kind consistent with which sides are empty.
  bool well_formed() const;

  friend bool operator==(const Edit&, const Edit&) = default;
};

/// Edit-level rating: correctness 0/1, localisation 0..2, offensiveness 0/1.
struct EditScores {
  int correctness = 0;
  int localisation = 0;
  int offensiveness = 0;

  friend bool operator==(const EditScores&, const EditScores&) = default;
};

enum class Strategy {
  Preservation,
  Addition,
  Omission,
  Localisation,
  Globalisation,
  Transformation,
  Creation,
};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy_name(std::string_view name);

/// Strategies the classifier prompt can return. Preservation and Creation are
/// assigned by alignment, never by the classifier.
inline constexpr std::array<Strategy, 5> kClassifiableStrategies = {
    Strategy::Localisation, Strategy::Transformation, Strategy::Globalisation,
    Strategy::Addition, Strategy::Omission,
};

enum class Aspect {
  Naturalness,
  Localisation,
  Offensiveness,
  Stereotypical,
  ContentPreservation,
};

inline constexpr std::size_t kAspectCount = 5;
inline constexpr std::array<Aspect, kAspectCount> kAllAspects = {
    Aspect::Naturalness, Aspect::Localisation, Aspect::Offensiveness,
    Aspect::Stereotypical, Aspect::ContentPreservation,
};

/// Snake-case key used in files ("content_preservation").
std::string_view to_string(Aspect a);
/// Title used in reports ("Content Preservation").
std::string_view display_name(Aspect a);
std::optional<Aspect> parse_aspect(std::string_view name);

/// Dialog-level rating, each aspect 1..5, indexed by Aspect.
struct DialogScores {
  std::array<int, kAspectCount> scores{};
  std::array<std::string, kAspectCount> explanations{};

  int operator[](Aspect a) const { return scores[static_cast<std::size_t>(a)]; }
  int& operator[](Aspect a) { return scores[static_cast<std::size_t>(a)]; }

  friend bool operator==(const DialogScores&, const DialogScores&) = default;
};

}  // namespace adapteval::judge
