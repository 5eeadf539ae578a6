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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adapteval::judge {

enum class TemplateId { Adapt, ExtractEdits, ScoreEdit, ClassifyStrategy, ScoreDialog };

inline constexpr std::array<TemplateId, 5> kAllTemplates = {
    TemplateId::Adapt, TemplateId::ExtractEdits, TemplateId::ScoreEdit,
    TemplateId::ClassifyStrategy, TemplateId::ScoreDialog,
};

/// "adapt", "extract_edits", "score_edit", "classify_strategy", "score_dialog".
std::string_view to_string(TemplateId id);
std::optional<TemplateId> parse_template_id(std::string_view name);

using Bindings = std::map<std::string, std::string, std::less<>>;

/// A prompt body with `{name}` placeholders. `{{` and `}}` render as literal
/// braces. `few_shot` is the exemplar block bound to `{few_shot}` when the
/// caller does not supply one.
struct PromptTemplate {
  TemplateId id = TemplateId::Adapt;
  std::string body;
  std::string few_shot;

  /// Placeholder names in order of first appearance.
  std::vector<std::string> placeholders() const;
};

/// Substitutes every placeholder. Throws UnboundPlaceholder for the first
/// placeholder missing from `bindings`.
std::string render_template(std::string_view body, const Bindings& bindings);

/// Recovers the bindings that rendered `text` from `body`, or nullopt when the
/// literal parts do not line up. Each placeholder takes the text up to the
/// next occurrence of the following literal part; the last one takes the rest.
std::optional<Bindings> match_template(std::string_view body, std::string_view text);

/// Built-in templates targeting Indian culture.
const PromptTemplate& builtin_template(TemplateId id);

/// Renders a built-in template.
std::string render_prompt(TemplateId id, const Bindings& bindings);

/// Built-in templates with optional per-file overrides, for running against a
/// different target culture: `<dir>/<template_id>.txt` replaces a body and
/// `<dir>/adapt_few_shot.txt` replaces the adaptation exemplars.
class PromptLibrary {
 public:
  PromptLibrary();
  static PromptLibrary from_directory(const std::filesystem::path& dir);

  const PromptTemplate& get(TemplateId id) const;
  std::string render(TemplateId id, const Bindings& bindings) const;

 private:
  std::array<PromptTemplate, kAllTemplates.size()> templates_;
};

}  // namespace adapteval::judge
