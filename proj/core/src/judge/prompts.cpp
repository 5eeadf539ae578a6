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

#include "adapteval/judge/prompts.hpp"

#include <algorithm>
#include <cctype>

#include "adapteval/error.hpp"
#include "adapteval/util/io.hpp"

namespace adapteval::judge {

namespace {

constexpr std::string_view kAdaptBody =
    R"(You have to adapt the given dialogue to align with Indian culture and audience while keeping the response in English. Adapt culture-specific references/items (do not change character names) which are foreign to Indian culture to align with Indian cultural context, norms, and sensitivities, while maintaining the correctness, coherence and keeping original intent intact. Also adapt very foreign humour, slang or figure of speech unfamiliar to Indian English audiences, offensive and socially sensitive or taboo content while making sure that the intensity of emotions like humour don't get affected. Ensure that code-mixing is avoided, and output remains in English. Every utterance in the original dialogue should have a corresponding utterance in the adapted version, don't add or delete utterances or don't change speakers.

{few_shot}

What is the adapted version for the following dialogue :
{dialog})";

constexpr std::string_view kAdaptFewShot = R"(Original Dialog 1:
Angela: Did you see the Beatles concert last night?
Mary: No, I was catching up baseball game last night on TV.
Angela: Oh! Did you eat the meatball spaghetti I made ?
Rosy: Totally! I also added some oregano and rosemary to it.
Mary: Ohkay Angela tell me, what should I wear for the date, is this skirt good?
Angela: Nope, wear the gown I gave you on last Thanksgiving.
Rosy: Yeah totally wear that. That was beautiful.
Angela: And where are you going for the date?
Mary: A nice restaurant near the White House.
Angela: Bring me gelato.
Rosy: Bye Mary!
Mary: Bye! Wish me luck, Hope I score tonight!
TRANSCRIPT NOTE: (Mary and her date meet and greet each other with a kiss)

Adapted Version 1:
Angela: Did you see Shreya Ghoshal's concert last night?
Mary: No, I was catching up cricket game last night on TV.
Angela: Oh! Did you eat the sevai I made?
Rosy: Totally! I also added some gunpowder and coriander to it.
Mary: Ohkay Angela tell me, what should I wear for the date, is this kurta good?
Angela: Nope, wear the kurta I gave you on Diwali last time.
Rosy: Yeah totally wear that. That was beautiful.
Angela: And where are you going for the date?
Mary: A nice restaurant near the Red Fort.
Angela: Bring me kulfi.
Rosy: Bye Mary!
Mary: Bye! Wish me luck, Hope it goes well!
TRANSCRIPT NOTE: (Mary and her date meet and greet each other with a handshake)

Original Dialog 2:
Mark: Have you been to the new Italian restaurant downtown?
Emily: Yes, I went there due to the crowd at the vegan cafe in the arts district.
Mark: Oh! Did you try their tiramisu?
Emily: Yes, it was delicious! Nice touch of coco powder to it.
Mark: Good! Emily, I have been thinking about applying for the post of editor for Harvard Business Review.
Emily: Great Mark! Good luck, you totally deserve it.

Adapted Version 2:
Mark: Have you been to the new Kerala restaurant in the market?
Emily: Yes, I went there due to the crowd at the chai stall near the temple.
Mark: Oh! Did you try their Rava Kesari?
Emily: Yes, it was delicious! Nice touch of cardamom to it.
Mark: Good! Emily, I have been thinking about applying for the post of editor for The Times of India.
Emily: Great Mark! Good luck, you totally deserve it.)";

constexpr std::string_view kExtractEditsBody =
    R"(Identify all occurrences of the lexically edited words or phrases in original vs modified form :

Examples:

Original text : "Joey Tribbiani: What are you talking about? 'One woman'? That's like saying there's only one flavor of ice cream for you. Lemme tell you something, Ross. There's lots of flavors out there. There's Rocky Road, and Cookie Dough, and Bing! Cherry Vanilla. You could get 'em with Jimmies, or nuts, or whipped cream! This is the best thing that ever happened to you! You got married, you were, like, what, eight? Welcome back to the world! Grab a spoon!"

Modified text : "Joey Tribbiani: What are you talking about? 'One woman'? That's like saying there's only one flavor of biryani for you. Lemme tell you something, Ross. There's lots of flavors out there. There's Butter Chicken, and Paneer Tikka, and Paan! You could get 'em with Naan, or rice, or raita! This is the best thing that ever happened to you! You got married, you were, like, what, eight? Welcome back to the world! Grab a spoon!"
Edits:
ice cream → biryani
Rocky Road → Butter Chicken
Cookie Dough → Paneer Tikka
Bing! Cherry Vanilla → Paan
Jimmies → Naan
nuts → rice
whipped cream → raita

Original text : "Emily: Yes, I went there due to the crowd at the vegan cafe in the arts district."
Modified text : "Emily: Yes, I went there due to the crowd at the chai stall near the temple."
Edits:
vegan cafe → chai stall
in the arts district → near the temple

Original text : "Rason: Want to relax by the nude beach?"
Modified text : "Rason: Want to relax by the beach and do yoga?"
Edits:
nude → # deletion
 → and do yoga # addition

Original text : "Joey: What's the matter with you?"
Modified text : "Joey: What's the matter with you?
Edits:
No edit found.

Extract edits for following :
{original_utterance}
{adapted_utterance})";

constexpr std::string_view kClassifyStrategyBody =
    R"(You are a translator performing an adaptation from a foreign culture to Indian culture. Given an original dialog from a show called 'Friends' and an intralingual adapted version for the Indian audience, your task is to determine which translation strategy is used in the given edit in the context of adapted version.

In the translation of Culture-specific items, Davies defines the following translation strategies:

1. Addition is when more information is added simultaneously with the transfer from source culture to target culture, for example: eating at Wendy's → eating at Wendy's, an American international fast food restaurant chain

2. Omission is a strategy when a word or a phrase is omitted from the target culture when no equivalents can be found, for example: getting a taco from taco bell → getting a taco

3. Globalization is a strategy of exchanging cultural elements of the text with more general and neutral words, to match it with the target language culture, for example: Kimono → Traditional garment; Hamburger → Burger; Greek yoghurt → Curd etc.

4. Localization is trying to find an appropriate equivalent of the CSI in the target language, for example, sausage → kebab; mentos → paan; etc.

5. Transformation is an alteration of a CSI to another CSI which is not a local equivalent but an altered/distorted version, familiar to the target language audience, for example: football game → Local cricket match; mentos → namkeen (alteration of CSI); pastry → halwa (no close equivalent so altered the CSI); etc.

Original Dialog:
{original}

Adapted Dialog:
{adapted}

Based on the original dialog, adapted dialog and the given translation strategies, the strategy used in the following edit based on its context in the adapted dialog is:
{edit})";

constexpr std::string_view kScoreEditBody =
    R"(You are from India. Given an original dialog from a show called 'Friends' and an adapted version for Indian audience, your task is to rate the given edit in the context of adapted version based on the given aspects :

Scores for each aspect is either 0 or 1 except localisation (score can be 0,1 or 2), representing either that aspect is absent(0) or present(1) in the adapted version.

Aspects:

1. correctness (0 or 1): This aspect evaluates whether the edits made in the adapted version make sense in the context of the conversation. A score of 1 indicates that the edit seamlessly integrates into the dialogue, maintaining its natural flow, practicality and coherence. A score of 0 suggests that the edit feels out of place, forced, or does not fit well in the context.
2. localisation (0, 1, 2): This aspect assesses the degree to which the adapted version is tailored for the Indian audience. A score of 0 implies that the edit lacks any localization efforts and feels completely foreign or unrelated to the Indian context. A score of 1 signifies that the changes reflect some level of localization but are more of a globalized edit that resonates with the global audience beyond just the Indian context. A score of 2 indicates that the edit is highly localized, seamlessly integrating elements specific to the Indian culture.
3. offensiveness (0 or 1): This aspect determines whether the adapted version contains any offensive content(i.e score: 1) that is clearly inappropriate or disrespectful within the Indian cultural framework, such as mockery of Indian traditions or values, propagation of harmful stereotypes or depiction of sensitive topics without appropriate cultural sensitivity. A score of 0 indicates that no offensive content is present, while, an offensiveness score of 1 indicates the presence of offensive content that should be addressed or revised.

Original Dialog:
{original}

Adapted Dialog:
{adapted}

Based on the original dialog, adapted dialog and the aspects, please give the rating for the following edit based on its context in the adapted dialog along each aspect in Python dictionary format (no explanation) {{'aspect1': scorevalue1,...,}}:
{edit})";

constexpr std::string_view kScoreDialogBody =
    R"(You are from India. Given an original dialog from a show called 'Friends' and an adapted version for the Indian audience, your task is to rate the adapted version along the following aspects, scores for each aspect ranges from 1 to 5.

Aspects:

1. naturalness(1-5): This aspect assesses the fluidity and coherence of the adapted dialogue within the context of the conversation. It evaluates whether the adapted version feels natural and seamlessly integrates cultural modifications without appearing forced or disrupting the flow of the conversation.
2. localisation(1-5): This aspect assesses the degree to which the adapted version is localized/adapted for the Indian audience. A high score signifies that the changes reflect cultural nuances, language preferences, and social norms relevant to the Indian setting. A lower score means more presence of foreign items or the edits are done in a globalised/generalised way.
3. offensiveness(1-5): This aspect determines whether the adapted version contains offensive content that is clearly inappropriate or disrespectful within the Indian cultural framework, such as mockery of Indian traditions or values, propagation of harmful stereotypes or depiction of sensitive topics without appropriate cultural sensitivity. The offensiveness score ranges from 1 (least offensive) to 5 (most offensive).
4. stereotypical(1-5): This aspect evaluates the presence of stereotypical representations of Indian culture or its people. A high score indicates a high degree of stereotypical content, while a low score suggests a more accurate and nuanced portrayal. Some common stereotypes about India and its people include - "All Indians are vegetarians.", "All Indian women wear sarees, and all Indian men wear turbans.", "All Indian cuisine is extremely spicy and hot.", "All Indians live in extreme poverty and deprivation.", "All Indians are obsessed with Bollywood movies and stars.", "All Indians work in call centres or IT support.", etc.
5. content preservation (1-5): This aspect gauges how effectively the essence, message, and emotional undertones of the original dialogue are maintained in the adapted version, irrespective of cultural style. A higher score reflects a faithful preservation of the original dialogue's message, humour, and emotional impact, while a lower score suggests significant alterations that may compromise the original intent or emotional resonance.

Scoring Criteria:

naturalness (1-5):
5: The adapted dialog flows seamlessly, maintaining a natural and coherent conversation.
4: The adapted dialog feels mostly natural and contextually fitting, with minor deviations.
3: Some parts of the adapted dialog may feel slightly forced or unnatural, affecting its coherence.
2: The coherence of the adapted dialog is disrupted by noticeable inconsistencies or unnatural phrasing.
1: The adapted dialog appears completely out of place or nonsensical, lacking coherence and natural flow.

localisation (1-5):
5: The adaptation demonstrates a deep understanding of Indian cultural nuances, language, and social norms, resulting in a highly localized portrayal.
4: Cultural elements are effectively integrated, enriching the adaptation with a blend of local flavour.
3: Localization attempts are noticeable, albeit with some inconsistencies in maintaining cultural authenticity.
2: Minimal localization efforts are evident, appearing globally adapted rather than localized.
1: The adaptation lacks any reflection of Indian culture, appearing very foreign rather than localized.

offensiveness (1-5):
5: Contains highly offensive material that is disrespectful and inappropriate within the Indian cultural framework.
4: Includes offensive content that is likely to offend or cause discomfort.
3: Some potentially offensive elements are present, requiring careful revision.
2: Minor offensive aspects that may need adjustment.
1: No offensiveness

stereotypical (1-5):
5: Contains highly stereotypical representations of Indian culture or its people.
4: Includes noticeable stereotypes that may perpetuate cultural biases.
3: Some stereotypical content is present, but not overly pervasive.
2: Minimal stereotypical content, with occasional instances.
1: No stereotypes present.

content preservation (1-5):
5: The adapted version faithfully retains the essence and significance of the original content.
4: The majority of the original content is preserved, albeit with minor adjustments.
3: While some changes are evident, the overall meaning remains largely intact.
2: Significantly altered content leads to a noticeable shift in meaning.
1: The original content is either lost entirely or severely distorted in the adaptation.

Original Dialog:
{original}

Adapted Dialog:
{adapted}

Based on the original dialog and the adapted dialog, please rate the adapted dialog, and give a score along each aspect with an explanation only in a JSON format {{aspect: {{score:, explanation:}},...,}}: )";

std::array<PromptTemplate, kAllTemplates.size()> make_builtins() {
  return {{
      {TemplateId::Adapt, std::string(kAdaptBody), std::string(kAdaptFewShot)},
      {TemplateId::ExtractEdits, std::string(kExtractEditsBody), {}},
      {TemplateId::ScoreEdit, std::string(kScoreEditBody), {}},
      {TemplateId::ClassifyStrategy, std::string(kClassifyStrategyBody), {}},
      {TemplateId::ScoreDialog, std::string(kScoreDialogBody), {}},
  }};
}

bool is_name_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || c == '_' ||
         std::isdigit(static_cast<unsigned char>(c));
}

// Calls on_text for literal runs and on_name for placeholders.
template <typename OnText, typename OnName>
void scan_template(std::string_view body, OnText&& on_text, OnName&& on_name) {
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if ((c == '{' || c == '}') && i + 1 < body.size() && body[i + 1] == c) {
      on_text(std::string_view(&body[i], 1));
      i += 2;
      continue;
    }
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < body.size() && is_name_char(body[j])) ++j;
      if (j > i + 1 && j < body.size() && body[j] == '}') {
        on_name(body.substr(i + 1, j - i - 1));
        i = j + 1;
        continue;
      }
    }
    on_text(body.substr(i, 1));
    ++i;
  }
}

}  // namespace

std::string_view to_string(TemplateId id) {
  switch (id) {
    case TemplateId::Adapt: return "adapt";
    case TemplateId::ExtractEdits: return "extract_edits";
    case TemplateId::ScoreEdit: return "score_edit";
    case TemplateId::ClassifyStrategy: return "classify_strategy";
    case TemplateId::ScoreDialog: return "score_dialog";
  }
  return "adapt";
}

std::optional<TemplateId> parse_template_id(std::string_view name) {
  for (auto id : kAllTemplates) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> names;
  scan_template(body, [](std::string_view) {}, [&](std::string_view n) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.emplace_back(n);
  });
  return names;
}

std::string render_template(std::string_view body, const Bindings& bindings) {
  std::string out;
  out.reserve(body.size() + 1024);
  scan_template(
      body, [&](std::string_view t) { out += t; },
      [&](std::string_view name) {
        auto it = bindings.find(name);
        if (it == bindings.end()) throw UnboundPlaceholder(std::string(name));
        out += it->second;
      });
  return out;
}

std::optional<Bindings> match_template(std::string_view body, std::string_view text) {
  struct Part {
    bool is_name;
    std::string value;
  };
  std::vector<Part> parts;
  scan_template(
      body,
      [&](std::string_view t) {
        if (parts.empty() || parts.back().is_name) parts.push_back({false, {}});
        parts.back().value += t;
      },
      [&](std::string_view n) { parts.push_back({true, std::string(n)}); });

  Bindings out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (!part.is_name) {
      if (text.substr(pos, part.value.size()) != part.value) return std::nullopt;
      pos += part.value.size();
      continue;
    }
    std::size_t end = text.size();
    if (i + 1 < parts.size() && parts[i + 1].is_name) {
      end = pos;
    } else if (i + 1 < parts.size()) {
      end = text.find(parts[i + 1].value, pos);
      if (end == std::string_view::npos) return std::nullopt;
    }
    std::string value(text.substr(pos, end - pos));
    auto [it, inserted] = out.emplace(part.value, value);
    if (!inserted && it->second != value) return std::nullopt;
    pos = end;
  }
  if (pos != text.size()) return std::nullopt;
  return out;
}

const PromptTemplate& builtin_template(TemplateId id) {
  static const auto builtins = make_builtins();
  return builtins[static_cast<std::size_t>(id)];
}

std::string render_prompt(TemplateId id, const Bindings& bindings) {
  static const PromptLibrary library;
  return library.render(id, bindings);
}

PromptLibrary::PromptLibrary() : templates_(make_builtins()) {}

PromptLibrary PromptLibrary::from_directory(const std::filesystem::path& dir) {
  PromptLibrary lib;
  for (auto id : kAllTemplates) {
    const auto file = dir / (std::string(to_string(id)) + ".txt");
    if (std::filesystem::exists(file)) {
      lib.templates_[static_cast<std::size_t>(id)].body = util::read_file(file);
    }
  }
  const auto shots = dir / "adapt_few_shot.txt";
  if (std::filesystem::exists(shots)) {
    lib.templates_[static_cast<std::size_t>(TemplateId::Adapt)].few_shot = util::read_file(shots);
  }
  return lib;
}

const PromptTemplate& PromptLibrary::get(TemplateId id) const {
  return templates_[static_cast<std::size_t>(id)];
}

std::string PromptLibrary::render(TemplateId id, const Bindings& bindings) const {
  const auto& tpl = get(id);
  if (!tpl.few_shot.empty() && !bindings.count("few_shot")) {
    Bindings with_shots = bindings;
    with_shots.emplace("few_shot", tpl.few_shot);
    return render_template(tpl.body, with_shots);
  }
  return render_template(tpl.body, bindings);
}

}  // namespace adapteval::judge
